#include "fbl/errors.hpp"
#include "fbl/norm.hpp"

#include <algorithm>
#include <map>

namespace fbl {

namespace {

// All homomorphisms with values in {-g..g} (scaled by 1/g), by direct
// assignment in index order; a pair is checked once its four elements
// (a, b, a∧b, a∨b) all have values.
std::vector<std::vector<int>> grid_homs(const FiniteLattice& l, int g) {
  const int n = l.size();
  std::vector<std::vector<std::pair<int, int>>> due(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      const int last = std::max({a, b, l.meet(a, b), l.join(a, b)});
      due[static_cast<std::size_t>(last)].emplace_back(a, b);
    }
  std::vector<std::vector<int>> out;
  std::vector<int> v(static_cast<std::size_t>(n), 0);
  auto ok = [&](int i) {
    for (auto [a, b] : due[static_cast<std::size_t>(i)]) {
      const int va = v[static_cast<std::size_t>(a)];
      const int vb = v[static_cast<std::size_t>(b)];
      if (v[static_cast<std::size_t>(l.meet(a, b))] != std::min(va, vb)) return false;
      if (v[static_cast<std::size_t>(l.join(a, b))] != std::max(va, vb)) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      out.push_back(v);
      return;
    }
    for (int k = -g; k <= g; ++k) {
      v[static_cast<std::size_t>(i)] = k;
      if (ok(i)) self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

double grid_oracle_norm(const NormableFunction& f, const Rational& grid_step, int n_max, int size_cap) {
  const auto& lattice = f.lattice();
  const int n = lattice->size();
  if (n > size_cap) throw SizeCapExceeded("grid oracle limited to " + std::to_string(size_cap) + " elements");
  if (n_max < 1 || n_max > 3) throw InvalidInput("grid oracle supports tuples of 1 to 3 homomorphisms");
  const Rational inv = Rational(1) / grid_step;
  if (grid_step <= 0 || denominator(inv) != 1) throw InvalidInput("grid step must be 1/G for a positive integer G");
  const int g = static_cast<int>(numerator(inv));

  // Weight |x(e)| * g per element, packed in base g+1; keep the best value
  // per weight and drop weights dominated by a cheaper, better one.
  std::map<std::vector<int>, double> by_weight;
  for (const auto& h : grid_homs(*lattice, g)) {
    std::vector<double> values;
    std::vector<int> w;
    for (int k : h) {
      values.push_back(static_cast<double>(k) / g);
      w.push_back(std::abs(k));
    }
    const double val = std::abs(f(RealHom<double>(lattice, values)));
    auto [it, fresh] = by_weight.emplace(w, val);
    if (!fresh) it->second = std::max(it->second, val);
  }
  std::vector<std::pair<std::vector<int>, double>> items(by_weight.begin(), by_weight.end());
  std::vector<std::pair<std::vector<int>, double>> front;
  for (const auto& a : items) {
    bool dominated = false;
    for (const auto& b : items) {
      if (&a == &b || b.second < a.second) continue;
      bool below = true;
      bool strict = b.second > a.second;
      for (int e = 0; e < n; ++e) {
        if (b.first[static_cast<std::size_t>(e)] > a.first[static_cast<std::size_t>(e)]) below = false;
        if (b.first[static_cast<std::size_t>(e)] < a.first[static_cast<std::size_t>(e)]) strict = true;
      }
      if (below && strict) {
        dominated = true;
        break;
      }
    }
    if (!dominated) front.push_back(a);
  }

  // best1[b] = max value of one hom with weight <= b, over all budgets b.
  const int base = g + 1;
  std::size_t cells = 1;
  for (int e = 0; e < n; ++e) cells *= static_cast<std::size_t>(base);
  auto pack = [&](const std::vector<int>& w) {
    std::size_t idx = 0;
    for (int e = n - 1; e >= 0; --e) idx = idx * static_cast<std::size_t>(base) + static_cast<std::size_t>(w[static_cast<std::size_t>(e)]);
    return idx;
  };
  std::vector<double> best1(cells, 0.0);
  for (const auto& [w, val] : front) best1[pack(w)] = std::max(best1[pack(w)], val);
  std::size_t stride = 1;
  for (int e = 0; e < n; ++e) {
    for (std::size_t idx = 0; idx < cells; ++idx)
      if ((idx / stride) % static_cast<std::size_t>(base) > 0) best1[idx] = std::max(best1[idx], best1[idx - stride]);
    stride *= static_cast<std::size_t>(base);
  }

  const std::vector<int> full(static_cast<std::size_t>(n), g);
  auto minus = [&](const std::vector<int>& b, const std::vector<int>& w, std::vector<int>& out) {
    for (int e = 0; e < n; ++e) {
      out[static_cast<std::size_t>(e)] = b[static_cast<std::size_t>(e)] - w[static_cast<std::size_t>(e)];
      if (out[static_cast<std::size_t>(e)] < 0) return false;
    }
    return true;
  };
  auto best2 = [&](const std::vector<int>& b) {
    double best = best1[pack(b)];
    std::vector<int> rest(static_cast<std::size_t>(n));
    for (const auto& [w, val] : front)
      if (minus(b, w, rest)) best = std::max(best, val + best1[pack(rest)]);
    return best;
  };

  double result = best1[pack(full)];
  if (n_max >= 2) result = std::max(result, best2(full));
  if (n_max >= 3) {
    std::vector<int> rest(static_cast<std::size_t>(n));
    for (const auto& [w, val] : front)
      if (minus(full, w, rest)) result = std::max(result, val + best2(rest));
  }
  return result;
}

}  // namespace fbl
