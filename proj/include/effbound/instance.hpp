#pragma once

/**
 * @file instance.hpp
 * @brief One equation lambda_1 U_{n_1} + ... + lambda_k U_{n_k} = w p_1^{z_1} ... p_s^{z_s}.
 */

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "recurrence.hpp"

namespace effbound {

struct Instance {
  RecurrenceSpec spec;
  std::vector<mpz_class> lambdas;
  mpz_class w = 1;
  std::vector<unsigned long> primes;

  std::size_t k() const { return lambdas.size(); }
  std::size_t s() const { return primes.size(); }
};

inline bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

inline void validate(const Instance& in) {
  validate(in.spec);
  require(in.k() >= 1, ErrorKind::InvalidInstance, "at least one lambda is required");
  require(in.s() >= 1, ErrorKind::InvalidInstance, "at least one prime is required");
  for (std::size_t j = 0; j < in.k(); ++j)
    require(in.lambdas[j] != 0, ErrorKind::InvalidInstance, "lambda_" + std::to_string(j + 1) + " is zero");
  require(in.w != 0, ErrorKind::InvalidInstance, "w must be non-zero");
  for (std::size_t i = 0; i < in.s(); ++i) {
    const unsigned long p = in.primes[i];
    require(is_prime(p), ErrorKind::InvalidInstance, std::to_string(p) + " is not prime");
    for (std::size_t j = 0; j < i; ++j)
      require(in.primes[j] != p, ErrorKind::InvalidInstance, "prime " + std::to_string(p) + " is listed twice");
    require(!mpz_divisible_ui_p(in.w.get_mpz_t(), p), ErrorKind::InvalidInstance,
            "prime " + std::to_string(p) + " divides w; move that factor into the prime power");
  }
}

}  // namespace effbound
