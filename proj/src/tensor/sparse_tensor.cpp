#include "kt/tensor/sparse_tensor.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace kt {

SparseTensor::Index SparseTensor::flat(const int* idx) const {
  Index f = 0;
  for (int i = 0; i < rank_; ++i) f = f * Index(n_) + Index(idx[i]);
  return f;
}

SparseTensor::Index SparseTensor::flat(std::initializer_list<int> idx) const {
  if (int(idx.size()) != rank_) throw std::invalid_argument("SparseTensor: index rank");
  return flat(idx.begin());
}

void SparseTensor::digits(Index f, int* idx) const {
  for (int i = rank_ - 1; i >= 0; --i) {
    idx[i] = int(f % Index(n_));
    f /= Index(n_);
  }
}

Q SparseTensor::get(Index f) const {
  auto it = e_.find(f);
  return it == e_.end() ? Q(0) : it->second;
}

void SparseTensor::add(Index f, const Q& v) {
  if (kt::is_zero(v)) return;
  auto [it, fresh] = e_.try_emplace(f, v);
  if (!fresh) {
    it->second += v;
    if (kt::is_zero(it->second)) e_.erase(it);
  }
}

void SparseTensor::set(Index f, const Q& v) {
  if (kt::is_zero(v))
    e_.erase(f);
  else
    e_[f] = v;
}

void SparseTensor::prune() {
  for (auto it = e_.begin(); it != e_.end();)
    if (kt::is_zero(it->second))
      it = e_.erase(it);
    else
      ++it;
}

bool SparseTensor::is_zero() const {
  for (const auto& [f, v] : e_)
    if (!kt::is_zero(v)) return false;
  return true;
}

SparseTensor& SparseTensor::operator+=(const SparseTensor& o) {
  for (const auto& [f, v] : o.e_) add(f, v);
  return *this;
}

SparseTensor& SparseTensor::operator-=(const SparseTensor& o) {
  for (const auto& [f, v] : o.e_) add(f, -v);
  return *this;
}

SparseTensor& SparseTensor::operator*=(const Q& s) {
  if (kt::is_zero(s)) {
    e_.clear();
    return *this;
  }
  for (auto& [f, v] : e_) v *= s;
  return *this;
}

bool SparseTensor::operator==(const SparseTensor& o) const {
  if (n_ != o.n_ || rank_ != o.rank_) return false;
  for (const auto& [f, v] : e_)
    if (o.get(f) != v) return false;
  for (const auto& [f, v] : o.e_)
    if (get(f) != v) return false;
  return true;
}

SparseTensor operator+(SparseTensor a, const SparseTensor& b) { return a += b; }
SparseTensor operator-(SparseTensor a, const SparseTensor& b) { return a -= b; }
SparseTensor operator*(const Q& s, SparseTensor a) { return a *= s; }

namespace {

constexpr int kMaxRank = 12;

struct LabelPlan {
  // For every output slot: (operand, slot) providing its value.
  std::vector<std::pair<int, int>> out_src;
  // Pairs of slots within one operand that must agree.
  std::vector<std::pair<int, int>> diag_a, diag_b;
  // Shared label slots (a slot, b slot).
  std::vector<std::pair<int, int>> shared;
};

LabelPlan plan(std::string_view la, std::string_view lb, std::string_view lo) {
  LabelPlan p;
  auto first = [](std::string_view s, char c) { return int(s.find(c)); };
  for (std::size_t i = 0; i < la.size(); ++i) {
    int f = first(la, la[i]);
    if (f != int(i)) p.diag_a.emplace_back(f, int(i));
  }
  for (std::size_t i = 0; i < lb.size(); ++i) {
    int f = first(lb, lb[i]);
    if (f != int(i)) p.diag_b.emplace_back(f, int(i));
  }
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (first(la, la[i]) != int(i)) continue;
    auto j = lb.find(la[i]);
    if (j != std::string_view::npos) p.shared.emplace_back(int(i), int(j));
  }
  for (char c : lo) {
    auto i = la.find(c);
    if (i != std::string_view::npos) {
      p.out_src.emplace_back(0, int(i));
      continue;
    }
    auto j = lb.find(c);
    if (j == std::string_view::npos) throw std::invalid_argument("einsum: output label not found");
    p.out_src.emplace_back(1, int(j));
  }
  if (std::count_if(lo.begin(), lo.end(), [&](char c) { return std::count(lo.begin(), lo.end(), c) > 1; }))
    throw std::invalid_argument("einsum: repeated output label");
  return p;
}

bool diag_ok(const int* idx, const std::vector<std::pair<int, int>>& d) {
  for (const auto& [i, j] : d)
    if (idx[i] != idx[j]) return false;
  return true;
}

}  // namespace

void einsum_acc(SparseTensor& out, const Q& coef, const SparseTensor& a, std::string_view la, const SparseTensor& b,
                std::string_view lb, std::string_view lo) {
  if (int(la.size()) != a.rank() || int(lb.size()) != b.rank() || int(lo.size()) != out.rank())
    throw std::invalid_argument("einsum: label count does not match rank");
  if (a.n() != b.n() || a.n() != out.n()) throw std::invalid_argument("einsum: dimension mismatch");
  if (a.rank() > kMaxRank || b.rank() > kMaxRank || out.rank() > kMaxRank)
    throw std::invalid_argument("einsum: rank too large");
  LabelPlan p = plan(la, lb, lo);
  const SparseTensor::Index n = SparseTensor::Index(a.n());
  // Group B by the shared-label values.
  std::unordered_map<SparseTensor::Index, std::vector<std::pair<SparseTensor::Index, const Q*>>> groups;
  std::array<int, kMaxRank> ib{}, ia{}, io{};
  for (const auto& [f, v] : b.entries()) {
    b.digits(f, ib.data());
    if (!diag_ok(ib.data(), p.diag_b)) continue;
    SparseTensor::Index key = 0;
    for (const auto& s : p.shared) key = key * n + SparseTensor::Index(ib[s.second]);
    groups[key].emplace_back(f, &v);
  }
  Q t;
  for (const auto& [fa, va] : a.entries()) {
    a.digits(fa, ia.data());
    if (!diag_ok(ia.data(), p.diag_a)) continue;
    SparseTensor::Index key = 0;
    for (const auto& s : p.shared) key = key * n + SparseTensor::Index(ia[s.first]);
    auto it = groups.find(key);
    if (it == groups.end()) continue;
    Q ca = coef * va;
    for (const auto& [fb, vb] : it->second) {
      b.digits(fb, ib.data());
      for (std::size_t s = 0; s < p.out_src.size(); ++s)
        io[s] = p.out_src[s].first == 0 ? ia[p.out_src[s].second] : ib[p.out_src[s].second];
      t = ca * *vb;
      out.add(out.flat(io.data()), t);
    }
  }
}

SparseTensor einsum(const Q& coef, const SparseTensor& a, std::string_view la, const SparseTensor& b,
                    std::string_view lb, std::string_view lo) {
  SparseTensor out(a.n(), int(lo.size()));
  einsum_acc(out, coef, a, la, b, lb, lo);
  return out;
}

void einsum_acc(SparseTensor& out, const Q& coef, const SparseTensor& a, std::string_view la, std::string_view lo) {
  if (int(la.size()) != a.rank() || int(lo.size()) != out.rank())
    throw std::invalid_argument("einsum: label count does not match rank");
  LabelPlan p = plan(la, "", lo);
  std::array<int, kMaxRank> ia{}, io{};
  for (const auto& [fa, va] : a.entries()) {
    a.digits(fa, ia.data());
    if (!diag_ok(ia.data(), p.diag_a)) continue;
    for (std::size_t s = 0; s < p.out_src.size(); ++s) io[s] = ia[p.out_src[s].second];
    out.add(out.flat(io.data()), coef * va);
  }
}

SparseTensor einsum(const Q& coef, const SparseTensor& a, std::string_view la, std::string_view lo) {
  SparseTensor out(a.n(), int(lo.size()));
  einsum_acc(out, coef, a, la, lo);
  return out;
}

static SparseTensor average(const SparseTensor& t, const std::vector<int>& slots, bool signed_avg) {
  std::vector<int> perm(slots.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<std::vector<int>, int>> perms;
  do {
    int inv = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inv;
    perms.emplace_back(perm, (signed_avg && (inv % 2)) ? -1 : 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  Q w = Q(1, long(perms.size()));
  SparseTensor out(t.n(), t.rank());
  std::array<int, kMaxRank> idx{}, img{};
  for (const auto& [f, v] : t.entries()) {
    t.digits(f, idx.data());
    Q vw = v * w;
    for (const auto& [pm, s] : perms) {
      img = idx;
      for (std::size_t i = 0; i < slots.size(); ++i) img[slots[i]] = idx[slots[pm[i]]];
      out.add(out.flat(img.data()), s > 0 ? vw : Q(-vw));
    }
  }
  return out;
}

SparseTensor alt(const SparseTensor& t, const std::vector<int>& slots) { return average(t, slots, true); }
SparseTensor sym(const SparseTensor& t, const std::vector<int>& slots) { return average(t, slots, false); }

SparseTensor outer(const SparseTensor& a, const SparseTensor& b) {
  SparseTensor out(a.n(), a.rank() + b.rank());
  SparseTensor::Index scale = 1;
  for (int i = 0; i < b.rank(); ++i) scale *= SparseTensor::Index(a.n());
  for (const auto& [fa, va] : a.entries())
    for (const auto& [fb, vb] : b.entries()) out.add(fa * scale + fb, va * vb);
  return out;
}

}  // namespace kt
