#include "isopoly/polygon.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace isopoly {

namespace {

// Cross product of (a - o) and (b - o).
Rational cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

Rational segment_slope(const Point& a, const Point& b) {
  return (b.y - a.y) / (b.x - a.x);
}

}  // namespace

NewtonVector::NewtonVector(std::vector<Rational> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 1; i < entries_.size(); ++i)
    if (entries_[i - 1] < entries_[i])
      throw DomainError("Newton vector entries must be non-increasing");
}

NewtonVector NewtonVector::from_runs(const std::vector<std::pair<Rational, long>>& runs) {
  std::vector<Rational> e;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (i > 0 && !(runs[i].first < runs[i - 1].first))
      throw DomainError("slope runs must be strictly decreasing");
    if (runs[i].second <= 0) throw DomainError("run multiplicity must be positive");
    for (long k = 0; k < runs[i].second; ++k) e.push_back(runs[i].first);
  }
  return NewtonVector(std::move(e));
}

Rational NewtonVector::sum() const {
  Rational s = 0;
  for (const auto& a : entries_) s += a;
  return s;
}

NewtonVector NewtonVector::dual() const {
  std::vector<Rational> e(entries_.rbegin(), entries_.rend());
  for (auto& a : e) a = Rational(1) - a;
  return NewtonVector(std::move(e));
}

ConcavePolygon::ConcavePolygon() : verts_{{0, 0}} {}

ConcavePolygon ConcavePolygon::from_vertices(std::vector<Point> verts) {
  if (verts.empty()) throw DomainError("polygon needs at least the origin vertex");
  if (!(verts.front() == Point{0, 0})) throw DomainError("polygon must start at (0,0)");
  for (std::size_t i = 1; i < verts.size(); ++i)
    if (!(verts[i - 1].x < verts[i].x))
      throw DomainError("polygon abscissae must be strictly increasing");
  // Merge collinear interior vertices; a slope increase is a concavity failure.
  std::vector<Point> out;
  out.push_back(verts[0]);
  for (std::size_t i = 1; i < verts.size(); ++i) {
    while (out.size() >= 2) {
      const Point& a = out[out.size() - 2];
      const Point& b = out.back();
      Rational c = cross(a, b, verts[i]);
      if (c.is_zero()) {
        out.pop_back();
        continue;
      }
      if (c.sign() > 0) throw DomainError("vertex list is not concave");
      break;
    }
    out.push_back(verts[i]);
  }
  ConcavePolygon p;
  p.verts_ = std::move(out);
  return p;
}

ConcavePolygon ConcavePolygon::from_slopes(
    const std::vector<std::pair<Rational, Rational>>& slopes) {
  std::vector<Point> verts{{0, 0}};
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    if (i > 0 && !(slopes[i].first < slopes[i - 1].first))
      throw DomainError("slopes must be strictly decreasing");
    if (!(slopes[i].second > Rational(0))) throw DomainError("multiplicity must be positive");
    const Point& last = verts.back();
    verts.push_back({last.x + slopes[i].second, last.y + slopes[i].first * slopes[i].second});
  }
  ConcavePolygon p;
  p.verts_ = std::move(verts);
  return p;
}

ConcavePolygon ConcavePolygon::from_newton_vector(const NewtonVector& v) {
  std::vector<std::pair<Rational, Rational>> runs;
  for (const auto& a : v) {
    if (!runs.empty() && runs.back().first == a)
      runs.back().second += 1;
    else
      runs.emplace_back(a, 1);
  }
  return from_slopes(runs);
}

Rational ConcavePolygon::eval(const Rational& x) const {
  if (x < Rational(0) || domain_end() < x)
    throw DomainError("polygon evaluated outside its domain");
  auto it = std::lower_bound(verts_.begin(), verts_.end(), x,
                             [](const Point& p, const Rational& v) { return p.x < v; });
  if (it != verts_.end() && it->x == x) return it->y;
  const Point& b = *it;
  const Point& a = *(it - 1);
  return a.y + segment_slope(a, b) * (x - a.x);
}

Rational ConcavePolygon::slope_before(const Rational& x) const {
  if (!(Rational(0) < x) || domain_end() < x)
    throw DomainError("slope_before needs 0 < x <= N");
  auto it = std::lower_bound(verts_.begin(), verts_.end(), x,
                             [](const Point& p, const Rational& v) { return p.x < v; });
  const Point& b = *it;
  const Point& a = *(it - 1);
  return segment_slope(a, b);
}

Rational ConcavePolygon::slope_after(const Rational& x) const {
  if (x < Rational(0) || !(x < domain_end()))
    throw DomainError("slope_after needs 0 <= x < N");
  auto it = std::upper_bound(verts_.begin(), verts_.end(), x,
                             [](const Rational& v, const Point& p) { return v < p.x; });
  const Point& b = *it;
  const Point& a = *(it - 1);
  return segment_slope(a, b);
}

std::vector<Point> ConcavePolygon::break_points() const {
  if (verts_.size() <= 2) return {};
  return std::vector<Point>(verts_.begin() + 1, verts_.end() - 1);
}

bool ConcavePolygon::lies_on(const Point& z) const {
  if (z.x < Rational(0) || domain_end() < z.x) return false;
  return eval(z.x) == z.y;
}

bool ConcavePolygon::is_break_point(const Point& z) const {
  for (std::size_t i = 1; i + 1 < verts_.size(); ++i)
    if (verts_[i] == z) return true;
  return false;
}

bool ConcavePolygon::is_newton_shaped() const {
  for (const auto& v : verts_)
    if (!v.x.is_integer()) return false;
  return true;
}

NewtonVector ConcavePolygon::to_newton_vector() const {
  if (!is_newton_shaped())
    throw DomainError("polygon has non-integer break abscissae; not a Newton vector");
  std::vector<Rational> e;
  for (std::size_t i = 1; i < verts_.size(); ++i) {
    Rational s = segment_slope(verts_[i - 1], verts_[i]);
    long w = (verts_[i].x - verts_[i - 1].x).num().get_si();
    for (long k = 0; k < w; ++k) e.push_back(s);
  }
  return NewtonVector(std::move(e));
}

bool leq(const ConcavePolygon& p, const ConcavePolygon& q) {
  if (p.domain_end() != q.domain_end())
    throw DomainError("polygon comparison needs a common domain");
  if (p.end_value() != q.end_value()) return false;
  // Piecewise linearity: checking at the union of break abscissae suffices.
  for (const auto& v : p.vertices())
    if (q.eval(v.x) < v.y) return false;
  for (const auto& v : q.vertices())
    if (v.y < p.eval(v.x)) return false;
  return true;
}

ConcavePolygon concave_envelope(std::vector<Point> pts) {
  bool has_origin = false;
  for (const auto& z : pts) {
    if (z.x < Rational(0)) throw DomainError("envelope point with negative abscissa");
    if (z.x.is_zero()) {
      if (z.y.sign() > 0) throw DomainError("no concave function through (0,0) dominates a point above the origin");
      if (z.y.is_zero()) has_origin = true;
    }
  }
  if (!has_origin) throw DomainError("envelope requires the origin in the point set");
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  // Keep the highest point per abscissa.
  std::vector<Point> uniq;
  for (const auto& z : pts) {
    if (!uniq.empty() && uniq.back().x == z.x)
      uniq.back() = z;
    else
      uniq.push_back(z);
  }
  // Upper hull, left to right: keep clockwise turns only.
  std::vector<Point> hull;
  for (const auto& z : uniq) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), z).sign() >= 0)
      hull.pop_back();
    hull.push_back(z);
  }
  ConcavePolygon out = ConcavePolygon::from_vertices(std::move(hull));
  return out;
}

ConcavePolygon rescale(const ConcavePolygon& p, long d) {
  if (d <= 0) throw DomainError("rescale factor must be positive");
  Rational dd(d);
  std::vector<Point> verts;
  verts.reserve(p.vertices().size());
  for (const auto& v : p.vertices()) verts.push_back({v.x / dd, v.y / dd});
  return ConcavePolygon::from_vertices(std::move(verts));
}

ConcavePolygon dual(const ConcavePolygon& p) {
  const Rational& n = p.domain_end();
  const Rational& end = p.end_value();
  std::vector<Point> verts;
  verts.reserve(p.vertices().size());
  for (auto it = p.vertices().rbegin(); it != p.vertices().rend(); ++it)
    verts.push_back({n - it->x, n - it->x + it->y - end});
  return ConcavePolygon::from_vertices(std::move(verts));
}

bool is_symmetric(const ConcavePolygon& p) { return p == dual(p); }

ConcavePolygon restrict(const ConcavePolygon& p, const Rational& x0) {
  if (x0 < Rational(0) || p.domain_end() < x0)
    throw DomainError("restriction point outside the domain");
  std::vector<Point> verts;
  for (const auto& v : p.vertices()) {
    if (v.x < x0)
      verts.push_back(v);
    else
      break;
  }
  verts.push_back({x0, p.eval(x0)});
  return ConcavePolygon::from_vertices(std::move(verts));
}

ConcavePolygon rest_after(const ConcavePolygon& p, const Point& z) {
  if (!p.lies_on(z)) throw DomainError("split point does not lie on the polygon");
  std::vector<Point> verts{{0, 0}};
  for (const auto& v : p.vertices())
    if (z.x < v.x) verts.push_back({v.x - z.x, v.y - z.y});
  return ConcavePolygon::from_vertices(std::move(verts));
}

ConcavePolygon concat(const ConcavePolygon& head, const ConcavePolygon& tail) {
  std::vector<Point> verts = head.vertices();
  const Point off = verts.back();
  for (std::size_t i = 1; i < tail.vertices().size(); ++i) {
    const Point& v = tail.vertices()[i];
    verts.push_back({v.x + off.x, v.y + off.y});
  }
  return ConcavePolygon::from_vertices(std::move(verts));
}

ConcavePolygon pointwise_sum(const std::vector<ConcavePolygon>& ps) {
  if (ps.empty()) throw DomainError("sum of an empty polygon list");
  std::vector<Rational> xs;
  for (const auto& p : ps) {
    if (p.domain_end() != ps.front().domain_end())
      throw DomainError("polygon sum needs a common domain");
    for (const auto& v : p.vertices()) xs.push_back(v.x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Point> verts;
  for (const auto& x : xs) {
    Rational y = 0;
    for (const auto& p : ps) y += p.eval(x);
    verts.push_back({x, y});
  }
  return ConcavePolygon::from_vertices(std::move(verts));
}

ConcavePolygon scale_values(const ConcavePolygon& p, const Rational& c) {
  if (!(c > Rational(0))) throw DomainError("value scale must be positive");
  std::vector<Point> verts;
  for (const auto& v : p.vertices()) verts.push_back({v.x, v.y * c});
  return ConcavePolygon::from_vertices(std::move(verts));
}

ConcavePolygon average(const std::vector<ConcavePolygon>& ps) {
  if (ps.empty()) throw DomainError("average of an empty polygon list");
  for (const auto& p : ps)
    if (!p.is_newton_shaped())
      throw DomainError("average expects Newton-vector-shaped summands");
  long d = static_cast<long>(ps.size());
  return scale_values(pointwise_sum(ps), Rational(1, d));
}

NewtonVector average_types(const std::vector<NewtonVector>& types) {
  if (types.empty()) throw DomainError("average of an empty type list");
  std::vector<ConcavePolygon> ps;
  ps.reserve(types.size());
  for (const auto& t : types) ps.push_back(ConcavePolygon::from_newton_vector(t));
  return average(ps).to_newton_vector();
}

std::string to_string(const ConcavePolygon& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& v : p.vertices()) {
    if (!first) os << ';';
    first = false;
    os << '(' << v.x << ',' << v.y << ')';
  }
  return os.str();
}

ConcavePolygon parse_polygon(const std::string& text) {
  std::vector<Point> verts;
  std::size_t i = 0;
  auto expect = [&](char c) {
    if (i >= text.size() || text[i] != c)
      throw ParseError("bad polygon text near position " + std::to_string(i) + " in '" + text + "'");
    ++i;
  };
  while (i < text.size()) {
    expect('(');
    std::size_t comma = text.find(',', i);
    if (comma == std::string::npos) throw ParseError("bad polygon text: missing ','");
    Rational x = Rational::parse(text.substr(i, comma - i));
    i = comma + 1;
    std::size_t close = text.find(')', i);
    if (close == std::string::npos) throw ParseError("bad polygon text: missing ')'");
    Rational y = Rational::parse(text.substr(i, close - i));
    i = close + 1;
    verts.push_back({x, y});
    if (i < text.size()) expect(';');
  }
  if (verts.empty()) throw ParseError("empty polygon text");
  // Parsing is strict: the text must already be canonical.
  ConcavePolygon p = ConcavePolygon::from_vertices(verts);
  if (p.vertices() != verts) throw ParseError("polygon text is not in canonical form");
  return p;
}

std::string to_string(const NewtonVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ')';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ConcavePolygon& p) { return os << to_string(p); }
std::ostream& operator<<(std::ostream& os, const NewtonVector& v) { return os << to_string(v); }

}  // namespace isopoly
