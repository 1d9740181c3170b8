#pragma once

#include <map>
#include <string>

#include "isopoly/polygon.hpp"

namespace isopoly {

// Graded dimension profile of a K2-filtered vector space: jump index -> dim
// of the graded piece. Types and degrees depend only on this data.
class GradedProfile {
 public:
  GradedProfile() = default;
  explicit GradedProfile(std::map<long, long> graded);

  static GradedProfile trivial(long n) {
    return n == 0 ? GradedProfile() : GradedProfile({{0, n}});
  }

  const std::map<long, long>& graded() const { return graded_; }
  long total_dim() const;
  long dim_at(long jump) const;

  // (-i_1^{(n_1)}, ..., -i_m^{(n_m)}) with jumps ascending.
  NewtonVector type() const;
  long degree() const;

  // Componentwise n_i - n'_i; sub must fit inside.
  GradedProfile quotient_by(const GradedProfile& sub) const;
  bool contains(const GradedProfile& sub) const;

  // Text form: "jump:dim" comma-list, jumps ascending; empty profile is "".
  std::string str() const;
  static GradedProfile parse(const std::string& s);

  friend bool operator==(const GradedProfile&, const GradedProfile&) = default;

 private:
  std::map<long, long> graded_;
};

struct Lemma15Result {
  bool holds = false;
  bool equality = false;
};

// Lemma: -deg(sub) <= type(F)(n'), equality iff type(sub) = type(F)|[0,n'].
Lemma15Result lemma_1_5_check(const GradedProfile& full, const GradedProfile& sub);

}  // namespace isopoly
