#include "kt/tensor/maps.hpp"

#include "kt/numerics/linalg.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace kt {

void require_kind(const SparseTensor& t, const std::string& kind) {
  if (!fiber(t.n(), kind)->contains(t)) throw std::domain_error("tensor lacks the symmetry of " + kind);
}

SparseTensor partial_inverse(const SparseTensor& theta) {
  require_kind(theta, "L2xL1");
  SparseTensor mu(theta.n(), 3);
  einsum_acc(mu, 1, theta, "acb", "abc");
  einsum_acc(mu, 1, theta, "bca", "abc");
  einsum_acc(mu, -1, theta, "abc", "abc");
  return mu;
}

SparseTensor partial_inverse_back(const SparseTensor& mu) {
  require_kind(mu, "L1xL2");
  return alt(einsum(1, mu, "bac", "abc"), {0, 1});
}

SparseTensor fun_automorphism(const SparseTensor& x) {
  require_kind(x, "L1xWindow");
  SparseTensor y = x;
  y -= Q(2) * alt(einsum(1, x, "bcade", "abcde"), {1, 2});
  y -= Q(2) * alt(einsum(1, x, "deabc", "abcde"), {3, 4});
  return y;
}

SparseTensor fun_automorphism_inverse(const SparseTensor& y) {
  require_kind(y, "L1xWindow");
  SparseTensor x = y;
  x += Q(2) * alt(einsum(1, y, "bcade", "abcde"), {1, 2});
  x += Q(2) * alt(einsum(1, y, "deabc", "abcde"), {3, 4});
  x *= Q(-1, 3);
  return x;
}

SparseTensor mindless_recover(const SparseTensor& phi) {
  require_kind(phi, "L1xL4Hook");
  SparseTensor theta = alt(phi, {0, 1});
  return Q(8, 3) * alt(theta, {1, 2, 3, 4});
}

SparseTensor hook_alt_to_sym(const SparseTensor& mu) {
  require_kind(mu, "HookAlt");
  SparseTensor nu(mu.n(), 3);
  einsum_acc(nu, 1, mu, "cdb", "bcd");
  einsum_acc(nu, 1, mu, "dcb", "bcd");
  return nu;
}

SparseTensor hook_sym_to_alt(const SparseTensor& nu) {
  require_kind(nu, "HookSym");
  const int n = nu.n();
  static std::mutex mu_lock;
  static std::map<int, QMat> cache;
  QMat inv;
  {
    std::lock_guard<std::mutex> lock(mu_lock);
    auto it = cache.find(n);
    if (it != cache.end()) inv = it->second;
  }
  auto ha = fiber(n, "HookAlt");
  auto hs = fiber(n, "HookSym");
  if (inv.rows == 0) {
    SpMat fwd = tensor_matrix(*ha, *hs, hook_alt_to_sym);
    inv = inverse(to_dense(fwd));
    std::lock_guard<std::mutex> lock(mu_lock);
    cache[n] = inv;
  }
  return ha->embed(inv * hs->project(nu));
}

}  // namespace kt
