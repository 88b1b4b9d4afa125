#include "kt/tensor/fiber.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace kt {

SlotPerm swap_gen(int rank, int i, int j, int sign) {
  SlotPerm g;
  g.perm.resize(rank);
  std::iota(g.perm.begin(), g.perm.end(), 0);
  std::swap(g.perm[i], g.perm[j]);
  g.sign = sign;
  return g;
}

static std::vector<Variance> covariant(int r) { return std::vector<Variance>(r, Variance::Co); }

FiberSpec spec_full(int rank) { return {"Full" + std::to_string(rank), rank, {}, {}, covariant(rank)}; }

FiberSpec spec_alt(int k) {
  FiberSpec s{"Alt" + std::to_string(k), k, {}, {}, covariant(k)};
  for (int i = 0; i + 1 < k; ++i) s.gens.push_back(swap_gen(k, i, i + 1, -1));
  return s;
}

FiberSpec spec_sym(int k) {
  FiberSpec s{"Sym" + std::to_string(k), k, {}, {}, covariant(k)};
  for (int i = 0; i + 1 < k; ++i) s.gens.push_back(swap_gen(k, i, i + 1, 1));
  return s;
}

FiberSpec spec_l1_l2() { return {"L1xL2", 3, {swap_gen(3, 1, 2, -1)}, {}, covariant(3)}; }

FiberSpec spec_hook_alt() {
  FiberSpec s = spec_l1_l2();
  s.name = "HookAlt";
  s.constraints.push_back({Constraint::Kind::AltZero, {0, 1, 2}, {}});
  return s;
}

FiberSpec spec_hook_sym() {
  FiberSpec s{"HookSym", 3, {swap_gen(3, 1, 2, 1)}, {}, covariant(3)};
  s.constraints.push_back({Constraint::Kind::SymZero, {0, 1, 2}, {}});
  return s;
}

FiberSpec spec_s2_l2() {
  FiberSpec s{"S2L2", 4, {swap_gen(4, 0, 1, -1), swap_gen(4, 2, 3, -1)}, {}, covariant(4)};
  s.gens.push_back(SlotPerm{{2, 3, 0, 1}, 1});
  return s;
}

FiberSpec spec_window() {
  FiberSpec s = spec_s2_l2();
  s.name = "Window";
  s.constraints.push_back({Constraint::Kind::AltZero, {1, 2, 3}, {}});
  return s;
}

FiberSpec spec_vector() { return {"Vector", 1, {}, {}, {Variance::Contra}}; }

FiberSpec spec_end() { return {"End", 2, {}, {}, {Variance::Co, Variance::Contra}}; }

FiberSpec spec_forms_times(int p, const FiberSpec& f) {
  FiberSpec s;
  s.name = "L" + std::to_string(p) + "x" + f.name;
  s.rank = p + f.rank;
  for (int i = 0; i + 1 < p; ++i) s.gens.push_back(swap_gen(s.rank, i, i + 1, -1));
  for (const auto& g : f.gens) {
    SlotPerm h;
    h.perm.resize(s.rank);
    std::iota(h.perm.begin(), h.perm.end(), 0);
    for (int i = 0; i < f.rank; ++i) h.perm[p + i] = p + g.perm[i];
    h.sign = g.sign;
    s.gens.push_back(h);
  }
  for (const auto& c : f.constraints) {
    if (c.kind == Constraint::Kind::Custom) throw std::invalid_argument("spec_forms_times: custom constraint");
    Constraint d = c;
    for (auto& x : d.slots) x += p;
    s.constraints.push_back(d);
  }
  s.variance = covariant(p);
  s.variance.insert(s.variance.end(), f.variance.begin(), f.variance.end());
  return s;
}

FiberSpec spec_bay_window() {
  FiberSpec s = spec_forms_times(2, spec_window());
  s.name = "BayWindow";
  s.constraints.push_back({Constraint::Kind::AltZero, {0, 1, 2}, {}});
  return s;
}

FiberSpec spec_kind(const std::string& kind) {
  static const std::map<std::string, std::function<FiberSpec()>> table = {
      {"L1", [] { return spec_alt(1); }},
      {"L2", [] { return spec_alt(2); }},
      {"L3", [] { return spec_alt(3); }},
      {"L4", [] { return spec_alt(4); }},
      {"L5", [] { return spec_alt(5); }},
      {"S2", [] { return spec_sym(2); }},
      {"S3", [] { return spec_sym(3); }},
      {"Full2", [] { return spec_full(2); }},
      {"Full3", [] { return spec_full(3); }},
      {"Full4", [] { return spec_full(4); }},
      {"L1xL2", [] { return spec_l1_l2(); }},
      {"HookAlt", [] { return spec_hook_alt(); }},
      {"HookSym", [] { return spec_hook_sym(); }},
      {"S2L2", [] { return spec_s2_l2(); }},
      {"Window", [] { return spec_window(); }},
      {"Vector", [] { return spec_vector(); }},
      {"End", [] { return spec_end(); }},
      {"L1xS2", [] { return spec_forms_times(1, spec_sym(2)); }},
      {"L2xS2", [] { return spec_forms_times(2, spec_sym(2)); }},
      {"L3xS2", [] { return spec_forms_times(3, spec_sym(2)); }},
      {"L1xHookAlt", [] { return spec_forms_times(1, spec_hook_alt()); }},
      {"L2xHookAlt", [] { return spec_forms_times(2, spec_hook_alt()); }},
      {"L3xHookAlt", [] { return spec_forms_times(3, spec_hook_alt()); }},
      {"L1xWindow", [] { return spec_forms_times(1, spec_window()); }},
      {"L2xWindow", [] { return spec_forms_times(2, spec_window()); }},
      {"L1xS2L2", [] { return spec_forms_times(1, spec_s2_l2()); }},
      {"L1xL1xL2", [] { return spec_forms_times(1, spec_l1_l2()); }},
      {"BayWindow", [] { return spec_bay_window(); }},
      {"L2xL1", [] { return spec_forms_times(2, spec_alt(1)); }},
      {"L1xL4", [] { return spec_forms_times(1, spec_alt(4)); }},
      {"L1xL4Hook",
       [] {
         FiberSpec s = spec_forms_times(1, spec_alt(4));
         s.name = "L1xL4Hook";
         s.constraints.push_back({Constraint::Kind::AltZero, {0, 1, 2, 3, 4}, {}});
         return s;
       }},
  };
  auto it = table.find(kind);
  if (it == table.end()) throw std::invalid_argument("unknown fiber kind: " + kind);
  return it->second();
}

namespace {

std::vector<SlotPerm> close_group(int rank, const std::vector<SlotPerm>& gens) {
  std::map<std::vector<int>, int> seen;
  std::vector<SlotPerm> elems;
  SlotPerm id;
  id.perm.resize(rank);
  std::iota(id.perm.begin(), id.perm.end(), 0);
  elems.push_back(id);
  seen[id.perm] = 1;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      SlotPerm h;
      h.perm.resize(rank);
      for (int s = 0; s < rank; ++s) h.perm[s] = elems[i].perm[g.perm[s]];
      h.sign = elems[i].sign * g.sign;
      auto it = seen.find(h.perm);
      if (it != seen.end()) {
        if (it->second != h.sign) throw std::logic_error("inconsistent symmetry group");
        continue;
      }
      seen[h.perm] = h.sign;
      elems.push_back(h);
    }
  return elems;
}

SparseTensor apply_constraint(const Constraint& c, const SparseTensor& t) {
  switch (c.kind) {
    case Constraint::Kind::AltZero:
      return alt(t, c.slots);
    case Constraint::Kind::SymZero:
      return sym(t, c.slots);
    case Constraint::Kind::Custom:
      return c.map(t);
  }
  return t;
}

using Row = std::vector<std::pair<int, Q>>;

// r -= s * p, both sorted by column.
Row axpy(const Row& r, const Q& s, const Row& p) {
  Row out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, -s * p[j].second);
      ++j;
    } else {
      Q v = r[i].second - s * p[j].second;
      if (!is_zero(v)) out.emplace_back(r[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Fiber::Fiber(int n, FiberSpec spec) : n_(n), spec_(std::move(spec)) {
  const int r = spec_.rank;
  if (n < 1) throw std::invalid_argument("Fiber: n must be positive");
  if (int(spec_.variance.size()) != r) spec_.variance.assign(r, Variance::Co);
  auto group = close_group(r, spec_.gens);
  SparseTensor proto(n, r);
  SparseTensor::Index total = 1;
  for (int i = 0; i < r; ++i) total *= SparseTensor::Index(n);
  struct Orbit {
    SparseTensor::Index rep;
    std::vector<std::pair<SparseTensor::Index, int>> images;
  };
  std::vector<Orbit> orbits;
  std::vector<int> idx(r), img(r);
  for (SparseTensor::Index f = 0; f < total; ++f) {
    proto.digits(f, idx.data());
    bool is_rep = true, zero = false;
    std::vector<std::pair<SparseTensor::Index, int>> ims;
    for (const auto& g : group) {
      for (int s = 0; s < r; ++s) img[s] = idx[g.perm[s]];
      SparseTensor::Index h = proto.flat(img.data());
      if (h < f) {
        is_rep = false;
        break;
      }
      ims.emplace_back(h, g.sign);
    }
    if (!is_rep) continue;
    std::sort(ims.begin(), ims.end());
    std::vector<std::pair<SparseTensor::Index, int>> uniq;
    for (const auto& x : ims) {
      if (!uniq.empty() && uniq.back().first == x.first) {
        if (uniq.back().second != x.second) zero = true;
        continue;
      }
      uniq.push_back(x);
    }
    if (zero) continue;
    orbits.push_back({f, std::move(uniq)});
  }
  const int no = int(orbits.size());
  auto orbit_tensor = [&](int o) {
    SparseTensor t(n, r);
    for (const auto& [h, s] : orbits[o].images) t.set(h, Q(s));
    return t;
  };
  // Constraint rows keyed by (constraint, output index).
  std::map<std::pair<int, SparseTensor::Index>, Row> rows;
  for (int o = 0; o < no && !spec_.constraints.empty(); ++o) {
    SparseTensor t = orbit_tensor(o);
    for (std::size_t c = 0; c < spec_.constraints.size(); ++c) {
      SparseTensor out = apply_constraint(spec_.constraints[c], t);
      for (const auto& [h, v] : out.entries()) rows[{int(c), h}].emplace_back(o, v);
    }
  }
  std::vector<int> where(no, -1);
  std::vector<Row> piv_rows;
  std::vector<int> piv_col;
  for (auto& [key, row] : rows) {
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Row cur = std::move(row);
    std::size_t pos = 0;
    while (pos < cur.size()) {
      int c = cur[pos].first;
      if (where[c] < 0) {
        ++pos;
        continue;
      }
      Q s = cur[pos].second;
      cur = axpy(cur, s, piv_rows[where[c]]);
    }
    if (cur.empty()) continue;
    Q inv = 1 / cur[0].second;
    for (auto& e : cur) e.second *= inv;
    where[cur[0].first] = int(piv_rows.size());
    piv_col.push_back(cur[0].first);
    piv_rows.push_back(std::move(cur));
  }
  // Full reduction, highest pivot first.
  std::vector<int> order(piv_rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return piv_col[x] > piv_col[y]; });
  for (int k : order) {
    Row& row = piv_rows[k];
    Row out{row[0]};
    Row tail;
    for (std::size_t i = 1; i < row.size(); ++i) {
      int c = row[i].first;
      if (where[c] >= 0) {
        const Row& pr = piv_rows[where[c]];
        Row scaled(pr.begin() + 1, pr.end());
        for (auto& e : scaled) e.second *= -row[i].second;
        tail = axpy(tail, Q(-1), scaled);
      } else {
        tail = axpy(tail, Q(-1), Row{row[i]});
      }
    }
    out.insert(out.end(), tail.begin(), tail.end());
    row = std::move(out);
  }
  std::vector<int> free_index(no, -1);
  for (int o = 0; o < no; ++o)
    if (where[o] < 0) {
      free_index[o] = int(free_.size());
      free_.push_back(o);
    }
  std::vector<Row> extra(free_.size());
  for (std::size_t k = 0; k < piv_rows.size(); ++k)
    for (std::size_t i = 1; i < piv_rows[k].size(); ++i) {
      int f = free_index[piv_rows[k][i].first];
      extra[f].emplace_back(piv_col[k], -piv_rows[k][i].second);
    }
  basis_.reserve(free_.size());
  for (std::size_t j = 0; j < free_.size(); ++j) {
    SparseTensor t = orbit_tensor(free_[j]);
    for (const auto& [o, v] : extra[j]) {
      for (const auto& [h, s] : orbits[o].images) t.add(h, s > 0 ? v : Q(-v));
    }
    basis_.push_back(std::move(t));
    coord_index_.push_back(orbits[free_[j]].rep);
    coord_lookup_[orbits[free_[j]].rep] = int(j);
  }
}

int Fiber::coordinate_of(SparseTensor::Index f) const {
  auto it = coord_lookup_.find(f);
  return it == coord_lookup_.end() ? -1 : it->second;
}

SparseTensor Fiber::embed(const std::vector<Q>& x) const {
  if (int(x.size()) != dim()) throw std::invalid_argument("Fiber::embed: coordinate count");
  SparseTensor t(n_, rank());
  for (int j = 0; j < dim(); ++j) {
    if (is_zero(x[j])) continue;
    for (const auto& [h, v] : basis_[j].entries()) t.add(h, x[j] * v);
  }
  return t;
}

std::vector<Q> Fiber::project(const SparseTensor& t) const {
  if (t.n() != n_ || t.rank() != rank()) throw std::invalid_argument("Fiber::project: shape");
  std::vector<Q> x(dim());
  for (int j = 0; j < dim(); ++j) x[j] = t.get(coord_index_[j]);
  return x;
}

SparseVec Fiber::project_sparse(const SparseTensor& t) const {
  SparseVec out;
  for (const auto& [h, v] : t.entries()) {
    int j = coordinate_of(h);
    if (j >= 0 && !is_zero(v)) out.emplace_back(j, v);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool Fiber::contains(const SparseTensor& t) const {
  if (t.n() != n_ || t.rank() != rank()) return false;
  SparseTensor e(n_, rank());
  for (const auto& [j, v] : project_sparse(t))
    for (const auto& [h, w] : basis_[j].entries()) e.add(h, v * w);
  return e == t;
}

std::vector<Q> Fiber::project_checked(const SparseTensor& t) const {
  if (!contains(t)) throw std::domain_error("tensor is outside the fiber " + name());
  return project(t);
}

FiberPtr fiber(int n, const std::string& kind) {
  static std::mutex mu;
  static std::map<std::pair<int, std::string>, FiberPtr> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, kind});
    if (it != cache.end()) return it->second;
  }
  auto f = std::make_shared<const Fiber>(n, spec_kind(kind));
  std::lock_guard<std::mutex> lock(mu);
  cache[{n, kind}] = f;
  return f;
}

SpMat tensor_matrix(const Fiber& src, const Fiber& dst, const std::function<SparseTensor(const SparseTensor&)>& f,
                    bool check) {
  std::vector<SparseVec> cols(src.dim());
  for (int j = 0; j < src.dim(); ++j) {
    SparseTensor t = f(src.basis_tensor(j));
    if (check && !dst.contains(t)) throw std::domain_error("tensor_matrix: image outside " + dst.name());
    cols[j] = dst.project_sparse(t);
  }
  return sparse_from_columns(dst.dim(), cols);
}

SparseTensor slice0(const SparseTensor& t, int a) {
  SparseTensor out(t.n(), t.rank() - 1);
  SparseTensor::Index scale = 1;
  for (int i = 0; i < t.rank() - 1; ++i) scale *= SparseTensor::Index(t.n());
  for (const auto& [h, v] : t.entries())
    if (int(h / scale) == a) out.add(h % scale, v);
  return out;
}

SparseTensor with_form(int a, const SparseTensor& t) {
  SparseTensor out(t.n(), t.rank() + 1);
  SparseTensor::Index scale = 1;
  for (int i = 0; i < t.rank(); ++i) scale *= SparseTensor::Index(t.n());
  for (const auto& [h, v] : t.entries()) out.add(SparseTensor::Index(a) * scale + h, v);
  return out;
}

std::vector<SpMat> sliced_matrices(const Fiber& src, const Fiber& dst,
                                   const std::function<SparseTensor(const SparseTensor&)>& f, bool check) {
  const int n = src.n();
  std::vector<std::vector<SparseVec>> cols(n, std::vector<SparseVec>(src.dim()));
  SparseTensor::Index scale = 1;
  for (int i = 0; i < dst.rank(); ++i) scale *= SparseTensor::Index(n);
  for (int j = 0; j < src.dim(); ++j) {
    SparseTensor t = f(src.basis_tensor(j));
    if (t.rank() != dst.rank() + 1) throw std::invalid_argument("sliced_matrices: rank");
    if (check)
      for (int a = 0; a < n; ++a)
        if (!dst.contains(slice0(t, a))) throw std::domain_error("sliced_matrices: image outside " + dst.name());
    for (const auto& [h, v] : t.entries()) {
      int c = dst.coordinate_of(h % scale);
      if (c >= 0) cols[h / scale][j].emplace_back(c, v);
    }
  }
  std::vector<SpMat> out;
  for (int a = 0; a < n; ++a) out.push_back(sparse_from_columns(dst.dim(), cols[a]));
  return out;
}

void FiberSum::add(std::string label, FiberPtr f) {
  offset.push_back(dim());
  labels.push_back(std::move(label));
  parts.push_back(std::move(f));
}

int FiberSum::dim() const {
  int d = 0;
  for (const auto& p : parts) d += p->dim();
  return d;
}

int FiberSum::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return int(i);
  throw std::invalid_argument("FiberSum: no component " + label);
}

std::vector<Q> FiberSum::component(const std::vector<Q>& x, int i) const {
  return std::vector<Q>(x.begin() + offset[i], x.begin() + offset[i] + parts[i]->dim());
}

}  // namespace kt
