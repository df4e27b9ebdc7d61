#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's solvers: everything works on plain nested vectors of
// payoffs, with its own argmax/argmin (lowest index on ties).

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

using Row = std::vector<double>;
using Matrix = std::vector<Row>;  // [x][y]

inline std::size_t argmax(const Row& v) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] > v[best]) best = k;
  }
  return best;
}

inline std::size_t argmin(const Row& v) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] < v[best]) best = k;
  }
  return best;
}

using Chooser = std::function<std::size_t(const Row&)>;

// (eps (x) del)(q) = (a, b_a), b_x = del(y -> q(x,y)), a = eps(x -> q(x,b_x)).
inline std::pair<std::size_t, std::size_t> product(const Chooser& eps,
                                                   const Chooser& del,
                                                   const Matrix& q) {
  std::vector<std::size_t> b(q.size());
  Row outer(q.size());
  for (std::size_t x = 0; x < q.size(); ++x) {
    b[x] = del(q[x]);
    outer[x] = q[x][b[x]];
  }
  const std::size_t a = eps(outer);
  return {a, b[a]};
}

// a = eps(x -> q(x, del(y -> q(x,y)))), b = del(y -> q(eps(x -> q(x,y)), y)).
inline std::pair<std::size_t, std::size_t> bbc(const Chooser& eps,
                                               const Chooser& del,
                                               const Matrix& q) {
  Row outer_x(q.size());
  for (std::size_t x = 0; x < q.size(); ++x) outer_x[x] = q[x][del(q[x])];
  Row outer_y(q[0].size());
  for (std::size_t y = 0; y < q[0].size(); ++y) {
    Row column(q.size());
    for (std::size_t x = 0; x < q.size(); ++x) column[x] = q[x][y];
    outer_y[y] = q[eps(column)][y];
  }
  return {eps(outer_x), del(outer_y)};
}

// Classical no-profitable-deviation test on per-player row-major tensors.
inline bool classical_pure_nash(const std::vector<std::size_t>& counts,
                                const std::vector<Row>& payoffs,
                                const std::vector<std::size_t>& profile) {
  auto index = [&](const std::vector<std::size_t>& s) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < s.size(); ++j) k = k * counts[j] + s[j];
    return k;
  };
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double current = payoffs[i][index(profile)];
    std::vector<std::size_t> dev = profile;
    for (std::size_t x = 0; x < counts[i]; ++x) {
      dev[i] = x;
      if (payoffs[i][index(dev)] > current) return false;
    }
  }
  return true;
}

// Subgame-perfect value of a sequential game with max/min rounds, by plain
// recursion over the payoff tensor.
inline double backward_induction_value(const std::vector<std::size_t>& counts,
                                       const Row& payoff,
                                       const std::vector<bool>& maximise,
                                       std::size_t round = 0,
                                       std::size_t prefix_index = 0) {
  if (round == counts.size()) return payoff[prefix_index];
  double best = maximise[round] ? -INFINITY : INFINITY;
  for (std::size_t x = 0; x < counts[round]; ++x) {
    const double v = backward_induction_value(
        counts, payoff, maximise, round + 1, prefix_index * counts[round] + x);
    best = maximise[round] ? std::max(best, v) : std::min(best, v);
  }
  return best;
}

// Fully mixed equilibrium of a 2x2 bimatrix game from the two indifference
// equations: returns (p, q) = (prob. row plays 0, prob. column plays 0).
inline std::pair<double, double> mixed_2x2(const Matrix& a, const Matrix& b) {
  // Column indifferent: p b00 + (1-p) b10 = p b01 + (1-p) b11.
  const double p = (b[1][1] - b[1][0]) / (b[0][0] - b[1][0] - b[0][1] + b[1][1]);
  // Row indifferent: q a00 + (1-q) a01 = q a10 + (1-q) a11.
  const double q = (a[1][1] - a[0][1]) / (a[0][0] - a[0][1] - a[1][0] + a[1][1]);
  return {p, q};
}

// Square full-support indifference system for the opponent's strategy y:
// sum_c a[r][c] y[c] = v for every row r, sum_c y[c] = 1. Plain Gaussian
// elimination with partial pivoting; returns y (the value v is dropped).
inline Row indifference_solve(const Matrix& a) {
  const std::size_t n = a.size();
  // Unknowns y_0..y_{n-1}, v.
  Matrix m(n + 1, Row(n + 2, 0.0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m[r][c] = a[r][c];
    m[r][n] = -1.0;
  }
  for (std::size_t c = 0; c < n; ++c) m[n][c] = 1.0;
  m[n][n + 1] = 1.0;
  for (std::size_t col = 0; col <= n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r <= n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    std::swap(m[col], m[pivot]);
    for (std::size_t r = 0; r <= n; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (std::size_t k = col; k <= n + 1; ++k) m[r][k] -= f * m[col][k];
    }
  }
  Row y(n);
  for (std::size_t c = 0; c < n; ++c) y[c] = m[c][n + 1] / m[c][c];
  return y;
}

// Expected payoff of a 2-player game by double loop.
inline double expected_2p(const Matrix& payoff, const Row& x, const Row& y) {
  double s = 0.0;
  for (std::size_t r = 0; r < x.size(); ++r) {
    for (std::size_t c = 0; c < y.size(); ++c) s += x[r] * y[c] * payoff[r][c];
  }
  return s;
}

}  // namespace oracle
