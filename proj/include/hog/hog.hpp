#pragma once

#include "hog/core.hpp"
#include "hog/errors.hpp"
#include "hog/indexing.hpp"
#include "hog/io.hpp"
#include "hog/minimax.hpp"
#include "hog/mixed.hpp"
#include "hog/normal_form.hpp"
#include "hog/outcome.hpp"
#include "hog/random_games.hpp"
#include "hog/sequential.hpp"
#include "hog/simultaneous.hpp"
