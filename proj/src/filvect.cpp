#include "isopoly/filvect.hpp"

#include <sstream>

namespace isopoly {

GradedProfile::GradedProfile(std::map<long, long> graded) : graded_(std::move(graded)) {
  for (const auto& [jump, dim] : graded_)
    if (dim <= 0) throw DomainError("graded dimensions must be positive");
}

long GradedProfile::total_dim() const {
  long n = 0;
  for (const auto& [jump, dim] : graded_) n += dim;
  return n;
}

long GradedProfile::dim_at(long jump) const {
  auto it = graded_.find(jump);
  return it == graded_.end() ? 0 : it->second;
}

NewtonVector GradedProfile::type() const {
  std::vector<Rational> entries;
  for (const auto& [jump, dim] : graded_)
    for (long k = 0; k < dim; ++k) entries.push_back(Rational(-jump));
  // Jumps ascend, so negated jumps descend already.
  return NewtonVector(std::move(entries));
}

long GradedProfile::degree() const {
  long deg = 0;
  for (const auto& [jump, dim] : graded_) deg += jump * dim;
  return deg;
}

bool GradedProfile::contains(const GradedProfile& sub) const {
  for (const auto& [jump, dim] : sub.graded_)
    if (dim_at(jump) < dim) return false;
  return true;
}

GradedProfile GradedProfile::quotient_by(const GradedProfile& sub) const {
  if (!contains(sub)) throw DomainError("not a componentwise sub-profile");
  std::map<long, long> out;
  for (const auto& [jump, dim] : graded_) {
    long rem = dim - sub.dim_at(jump);
    if (rem > 0) out[jump] = rem;
  }
  return GradedProfile(std::move(out));
}

std::string GradedProfile::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [jump, dim] : graded_) {
    if (!first) os << ',';
    first = false;
    os << jump << ':' << dim;
  }
  return os.str();
}

GradedProfile GradedProfile::parse(const std::string& s) {
  std::map<long, long> g;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t colon = s.find(':', i);
    if (colon == std::string::npos) throw ParseError("bad profile text: '" + s + "'");
    std::size_t comma = s.find(',', colon);
    if (comma == std::string::npos) comma = s.size();
    long jump = std::stol(s.substr(i, colon - i));
    long dim = std::stol(s.substr(colon + 1, comma - colon - 1));
    if (g.count(jump)) throw ParseError("duplicate jump in profile text: '" + s + "'");
    g[jump] = dim;
    i = comma == s.size() ? comma : comma + 1;
  }
  return GradedProfile(std::move(g));
}

Lemma15Result lemma_1_5_check(const GradedProfile& full, const GradedProfile& sub) {
  if (!full.contains(sub)) throw DomainError("profile is not a legal subobject profile");
  long nsub = sub.total_dim();
  ConcavePolygon type_full = ConcavePolygon::from_newton_vector(full.type());
  Lemma15Result r;
  r.holds = Rational(-sub.degree()) <= type_full.eval(Rational(nsub));
  ConcavePolygon type_sub = ConcavePolygon::from_newton_vector(sub.type());
  r.equality = type_sub == restrict(type_full, Rational(nsub));
  return r;
}

}  // namespace isopoly
