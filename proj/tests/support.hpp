#pragma once

#include <algorithm>
#include <numbers>
#include <random>

#include "hyperpol/linalg.hpp"
#include "hyperpol/sequence.hpp"
#include "oracles.hpp"

namespace testing_support {

inline hyperpol::CMatrix random_matrix(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> d;
  hyperpol::CMatrix m(dim);
  for (auto& e : m.entries()) e = {d(rng), d(rng)};
  return m;
}

inline hyperpol::CMatrix random_hermitian(std::mt19937_64& rng, std::size_t dim) {
  const auto a = random_matrix(rng, dim);
  return 0.5 * (a + a.adjoint());
}

inline hyperpol::SequenceParams random_sequence(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> t(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> np(1, 6);
  std::uniform_int_distribution<int> nr(1, 4);
  hyperpol::SequenceParams s;
  s.n_p = np(rng);
  s.tau = t(rng);
  s.t_s = t(rng);
  s.t_w = t(rng);
  s.t_c = t(rng);
  s.n_r = nr(rng);
  return s;
}

inline double max_diff(const hyperpol::CMatrix& a, const oracle::M4& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m = std::max(m, std::abs(a(i, j) - b[i * 4 + j]));
  return m;
}

}  // namespace testing_support
