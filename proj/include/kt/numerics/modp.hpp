#pragma once

#include "kt/numerics/matrix.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace kt {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr u64 kMersenne61 = (u64(1) << 61) - 1;

// Prime field Z/p with p < 2^62.
struct Field {
  u64 p = kMersenne61;

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p ? s - p : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : p - a; }
  u64 mul(u64 a, u64 b) const {
    u128 z = u128(a) * b;
    if (p == kMersenne61) {
      u64 r = u64(z & kMersenne61) + u64(z >> 61);
      return r >= p ? r - p : r;
    }
    return u64(z % p);
  }
  u64 pow(u64 a, u64 e) const;
  u64 inv(u64 a) const;
  // Image of a rational; throws std::domain_error if p divides the denominator.
  u64 reduce(const Q& q) const;
};

// Primes near 2^61 used for CRT fallback; the first is 2^61 - 1.
const std::vector<u64>& modular_primes();

using ModMat = Csc<u64>;
ModMat reduce(const SpMat& m, const Field& f);
Csc<double> to_double(const SpMat& m);

// Row vector times matrix over the field.
void left_apply(const Field& f, const std::vector<u64>& r, const ModMat& m, std::vector<u64>& out);

// Smallest (|num|, den <= sqrt(M/2)) rational congruent to a mod M.
std::optional<Q> rational_reconstruct(const mpz_class& a, const mpz_class& m);

// Dense-row echelon form over Z/p with unit pivots.
class ModEchelon {
 public:
  ModEchelon(int n, Field f) : n_(n), f_(f), where_(n, -1) {}
  int ambient() const { return n_; }
  int rank() const { return int(rows_.size()); }
  const Field& field() const { return f_; }
  void reduce(std::vector<u64>& r) const;
  // Reduces against stored rows with index >= first only.
  void reduce_from(std::vector<u64>& r, int first) const;
  // Reduces then inserts; returns true if r was independent.
  bool insert(std::vector<u64> r);
  // Inserts a row already reduced against the current rows.
  bool insert_reduced(std::vector<u64> r);
  void make_reduced();
  const std::vector<std::vector<u64>>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return piv_; }
  std::vector<int> free_columns() const;

 private:
  int n_;
  Field f_;
  std::vector<std::vector<u64>> rows_;
  std::vector<int> piv_;
  std::vector<int> where_;
  bool reduced_ = false;
};

int rank_mod(const SpMat& m, const Field& f);

}  // namespace kt
