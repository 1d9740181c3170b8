#include "isopoly/isocrystal.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace isopoly {

namespace {

void validate_perm(const std::vector<long>& perm) {
  std::vector<bool> seen(perm.size(), false);
  for (long v : perm) {
    if (v < 0 || v >= static_cast<long>(perm.size()) || seen[v])
      throw DomainError("not a permutation");
    seen[v] = true;
  }
}

}  // namespace

void MonomialOperator::validate(long p) const {
  if (exponents.size() != perm.size() || units.size() != perm.size())
    throw DomainError("monomial operator field sizes disagree");
  validate_perm(perm);
  for (const auto& u : units) {
    if (u.is_zero()) throw DomainError("monomial operator unit must be nonzero");
    if (padic_valuation(u, p) != 0) throw DomainError("monomial operator unit must be a p-unit");
  }
}

std::vector<std::vector<Rational>> MonomialOperator::matrix(long p) const {
  std::size_t h = perm.size();
  std::vector<std::vector<Rational>> m(h, std::vector<Rational>(h, Rational(0)));
  for (std::size_t j = 0; j < h; ++j)
    m[j][perm[j]] = units[j] * pow_int(p, exponents[j]);
  return m;
}

void StandardIsocrystal::validate() const {
  if (p < 2) throw DomainError("p must be at least 2");
  if (f < 1) throw DomainError("f must be at least 1");
  MonomialOperator op{perm, exponents, units};
  op.validate(p);
  if (v_labels) {
    if (label_modulus < 1) throw DomainError("label modulus must be positive");
    if (v_labels->size() != perm.size()) throw DomainError("label count mismatch");
    for (std::size_t j = 0; j < perm.size(); ++j) {
      long expect = ((*v_labels)[j] + 1) % label_modulus;
      if ((*v_labels)[perm[j]] % label_modulus != expect)
        throw DomainError("phi must shift inertia labels by one");
    }
  }
}

std::vector<std::vector<Rational>> StandardIsocrystal::matrix() const {
  return MonomialOperator{perm, exponents, units}.matrix(p);
}

long dimension(const StandardIsocrystal& m) {
  return std::accumulate(m.exponents.begin(), m.exponents.end(), 0L);
}

std::vector<std::vector<long>> permutation_cycles(const std::vector<long>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::vector<std::vector<long>> cycles;
  for (std::size_t j = 0; j < perm.size(); ++j) {
    if (seen[j]) continue;
    std::vector<long> cyc;
    long cur = static_cast<long>(j);
    while (!seen[cur]) {
      seen[cur] = true;
      cyc.push_back(cur);
      cur = perm[cur];
    }
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

std::vector<SlopeComponent> slope_decomposition(const StandardIsocrystal& m) {
  std::map<Rational, long> heights;
  for (const auto& cyc : permutation_cycles(m.perm)) {
    long s = static_cast<long>(cyc.size());
    long r = 0;
    for (long j : cyc) r += m.exponents[j];
    heights[Rational(r, s)] += s;
  }
  std::vector<SlopeComponent> out;
  for (const auto& [slope, height] : heights) out.push_back({slope, height});
  return out;
}

NewtonVector newton_polygon(const StandardIsocrystal& m) {
  auto comps = slope_decomposition(m);
  // Slopes ascend, so the negated entries descend as required.
  std::vector<std::pair<Rational, long>> runs;
  for (const auto& c : comps) runs.emplace_back(-c.slope, c.height);
  return NewtonVector::from_runs(runs);
}

StandardIsocrystal shift(const StandardIsocrystal& m, long amount) {
  StandardIsocrystal out = m;
  for (auto& a : out.exponents) a += amount;
  return out;
}

StandardIsocrystal dual_isocrystal(const StandardIsocrystal& m) {
  StandardIsocrystal out = m;
  for (std::size_t j = 0; j < out.exponents.size(); ++j) {
    out.exponents[j] = 1 - m.exponents[j];
    out.units[j] = Rational(1) / m.units[j];
  }
  return out;
}

StandardIsocrystal direct_sum(const StandardIsocrystal& a, const StandardIsocrystal& b) {
  if (a.p != b.p || a.f != b.f) throw DomainError("direct sum over different base data");
  if (a.v_labels.has_value() != b.v_labels.has_value() ||
      (a.v_labels && a.label_modulus != b.label_modulus))
    throw DomainError("direct sum with incompatible label data");
  StandardIsocrystal out = a;
  long off = a.height();
  for (long v : b.perm) out.perm.push_back(v + off);
  out.exponents.insert(out.exponents.end(), b.exponents.begin(), b.exponents.end());
  out.units.insert(out.units.end(), b.units.begin(), b.units.end());
  if (a.v_labels)
    out.v_labels->insert(out.v_labels->end(), b.v_labels->begin(), b.v_labels->end());
  return out;
}

bool check_coefficient_height(const StandardIsocrystal& m, long d) {
  if (d <= 0) throw DomainError("coefficient degree must be positive");
  return m.height() % d == 0;
}

std::vector<Rational> charpoly(const std::vector<std::vector<Rational>>& a) {
  std::size_t h = a.size();
  for (const auto& row : a)
    if (row.size() != h) throw DomainError("characteristic polynomial of a non-square matrix");
  // Faddeev-LeVerrier: M_0 = I, c_h = 1; M_k = A M_{k-1} + c_{h-k+1} I,
  // c_{h-k} = -tr(A M_k)/k.
  std::vector<Rational> c(h + 1, Rational(0));
  c[h] = 1;
  std::vector<std::vector<Rational>> mk(h, std::vector<Rational>(h, Rational(0)));
  for (std::size_t i = 0; i < h; ++i) mk[i][i] = 1;
  for (std::size_t k = 1; k <= h; ++k) {
    // am = A * M_{k-1}
    std::vector<std::vector<Rational>> am(h, std::vector<Rational>(h, Rational(0)));
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t l = 0; l < h; ++l) {
        if (a[i][l].is_zero()) continue;
        for (std::size_t j = 0; j < h; ++j) am[i][j] += a[i][l] * mk[l][j];
      }
    Rational tr = 0;
    for (std::size_t i = 0; i < h; ++i) tr += am[i][i];
    c[h - k] = -tr / Rational(static_cast<long>(k));
    mk = am;
    for (std::size_t i = 0; i < h; ++i) mk[i][i] += c[h - k];
  }
  return c;
}

NewtonVector charpoly_newton(const std::vector<std::vector<Rational>>& a, long f, long p) {
  if (f < 1) throw DomainError("f must be at least 1");
  std::size_t h = a.size();
  for (const auto& row : a) {
    if (row.size() != h) throw DomainError("matrix must be square");
    for (const auto& e : row)
      if (!padic_integral(e, p)) throw DomainError("matrix entries must be p-integral");
  }
  // f-fold linearization of A * sigma with sigma-fixed entries is A^f.
  std::vector<std::vector<Rational>> pw(h, std::vector<Rational>(h, Rational(0)));
  for (std::size_t i = 0; i < h; ++i) pw[i][i] = 1;
  for (long k = 0; k < f; ++k) {
    std::vector<std::vector<Rational>> nx(h, std::vector<Rational>(h, Rational(0)));
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t l = 0; l < h; ++l) {
        if (pw[i][l].is_zero()) continue;
        for (std::size_t j = 0; j < h; ++j) nx[i][j] += pw[i][l] * a[l][j];
      }
    pw = std::move(nx);
  }
  std::vector<Rational> c = charpoly(pw);
  if (c[0].is_zero()) throw DomainError("singular matrix has no Newton polygon");
  // Lower convex hull of (i, v_p(c_i)), i = 0..h, c_h = 1: its slopes are the
  // valuations of the roots; slope over [i, i+1] repeats per unit width.
  std::vector<std::pair<long, Rational>> pts;
  for (std::size_t i = 0; i <= h; ++i) {
    if (c[i].is_zero()) continue;
    pts.emplace_back(static_cast<long>(i), Rational(padic_valuation(c[i], p)));
  }
  // Lower hull, left to right.
  std::vector<std::pair<long, Rational>> hull;
  for (const auto& z : pts) {
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& b = hull.back();
      Rational cr = Rational(b.first - o.first) * (z.second - o.second) -
                    (b.second - o.second) * Rational(z.first - o.first);
      if (cr.sign() <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(z);
  }
  // A hull segment of slope m and width w contributes w roots of valuation
  // -m; the isocrystal slope is that over f and the Newton entry its negative,
  // i.e. m/f. Lower-hull slopes increase, so reading right to left gives the
  // non-increasing entry order.
  std::vector<Rational> entries;
  for (std::size_t s = hull.size(); s-- > 1;) {
    Rational sl =
        (hull[s].second - hull[s - 1].second) / Rational(hull[s].first - hull[s - 1].first);
    for (long k = 0; k < hull[s].first - hull[s - 1].first; ++k)
      entries.push_back(sl / Rational(f));
  }
  return NewtonVector(std::move(entries));
}

}  // namespace isopoly
