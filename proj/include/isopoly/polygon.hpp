#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "isopoly/rational.hpp"

namespace isopoly {

struct Point {
  Rational x, y;
  friend bool operator==(const Point&, const Point&) = default;
};

// Decreasing tuple of rationals: an element of the Newton set.
class NewtonVector {
 public:
  NewtonVector() = default;
  explicit NewtonVector(std::vector<Rational> entries);
  NewtonVector(std::initializer_list<Rational> entries)
      : NewtonVector(std::vector<Rational>(entries)) {}

  // (slope, multiplicity) pairs, strictly decreasing slopes, integer multiplicities.
  static NewtonVector from_runs(const std::vector<std::pair<Rational, long>>& runs);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Rational>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  Rational sum() const;
  // Entrywise i-th becomes 1 - a_{n+1-i}.
  NewtonVector dual() const;

  friend bool operator==(const NewtonVector&, const NewtonVector&) = default;

 private:
  std::vector<Rational> entries_;
};

// Concave piecewise-linear function on [0, N] with P(0) = 0, stored as its
// vertex list (0,0), ..., (N, P(N)) with strictly decreasing segment slopes.
// The canonical form keeps genuine break points only; equality is structural.
class ConcavePolygon {
 public:
  ConcavePolygon();  // empty polygon on [0, 0]

  // Vertices may contain collinear points; they are merged. Must start at
  // (0,0), have strictly increasing x and non-strictly-increasing slope is
  // rejected after merging.
  static ConcavePolygon from_vertices(std::vector<Point> verts);
  // Strictly decreasing slopes, positive multiplicities (widths).
  static ConcavePolygon from_slopes(const std::vector<std::pair<Rational, Rational>>& slopes);
  static ConcavePolygon from_newton_vector(const NewtonVector& v);

  const std::vector<Point>& vertices() const { return verts_; }
  const Rational& domain_end() const { return verts_.back().x; }
  const Rational& end_value() const { return verts_.back().y; }
  bool is_empty_domain() const { return verts_.size() == 1; }

  Rational eval(const Rational& x) const;
  // Slope of the segment containing x on the given side; x must be interior
  // to the domain for the relevant side to exist.
  Rational slope_before(const Rational& x) const;
  Rational slope_after(const Rational& x) const;

  // Interior break points (extremal points excluded).
  std::vector<Point> break_points() const;
  bool lies_on(const Point& z) const;
  bool is_break_point(const Point& z) const;

  // True when the polygon is the embedding of a NewtonVector: integer domain
  // and all break points at integer abscissae.
  bool is_newton_shaped() const;
  NewtonVector to_newton_vector() const;

  friend bool operator==(const ConcavePolygon&, const ConcavePolygon&) = default;

 private:
  std::vector<Point> verts_;
};

// Partial order: P below Q everywhere with the same end point. Domains must
// agree (DomainError otherwise); differing end values give false.
bool leq(const ConcavePolygon& p, const ConcavePolygon& q);

// Least concave function through (0,0) dominating all points; the domain end
// is the largest abscissa present. Requires (0,0) in the set and no point
// above 0 at x = 0.
ConcavePolygon concave_envelope(std::vector<Point> pts);

// x -> (1/d) P(dx) on [0, N/d].
ConcavePolygon rescale(const ConcavePolygon& p, long d);

// x -> x + P(N - x) - P(N); an involution.
ConcavePolygon dual(const ConcavePolygon& p);
bool is_symmetric(const ConcavePolygon& p);

// P restricted to [0, x0].
ConcavePolygon restrict(const ConcavePolygon& p, const Rational& x0);
// t -> P(t + z.x) - z.y on [0, N - z.x]; z must lie on P.
ConcavePolygon rest_after(const ConcavePolygon& p, const Point& z);
// Inverse of the split: restrict(P, z.x) followed by rest_after(P, z).
ConcavePolygon concat(const ConcavePolygon& head, const ConcavePolygon& tail);

// Pointwise sum of polygons on a common domain (concavity can fail for
// arbitrary summands only if slopes interleave; the sum of concave functions
// is concave, so this always succeeds).
ConcavePolygon pointwise_sum(const std::vector<ConcavePolygon>& ps);
ConcavePolygon scale_values(const ConcavePolygon& p, const Rational& c);

// (1/d) sum of d NewtonVector-shaped polygons on a common [0, n].
ConcavePolygon average(const std::vector<ConcavePolygon>& ps);
NewtonVector average_types(const std::vector<NewtonVector>& types);

// Canonical text form "(x1,y1);(x2,y2);..." with rationals in lowest terms.
std::string to_string(const ConcavePolygon& p);
ConcavePolygon parse_polygon(const std::string& text);

std::string to_string(const NewtonVector& v);

std::ostream& operator<<(std::ostream& os, const ConcavePolygon& p);
std::ostream& operator<<(std::ostream& os, const NewtonVector& v);

}  // namespace isopoly
