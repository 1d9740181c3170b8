#include "isopoly/io.hpp"

#include <fstream>
#include <sstream>

namespace isopoly {

namespace {

struct Lines {
  std::vector<std::string> raw;
  std::size_t pos = 0;

  explicit Lines(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) raw.push_back(line);
  }

  [[noreturn]] void fail(const std::string& why, std::size_t lineno) const {
    throw ParseError("line " + std::to_string(lineno + 1) + ": " + why);
  }

  // Next meaningful line (strips comments and blanks); empty optional at EOF.
  std::optional<std::pair<std::string, std::size_t>> next() {
    while (pos < raw.size()) {
      std::string s = raw[pos];
      std::size_t hash = s.find('#');
      if (hash != std::string::npos) s = s.substr(0, hash);
      std::size_t b = s.find_first_not_of(" \t\r");
      std::size_t e = s.find_last_not_of(" \t\r");
      ++pos;
      if (b == std::string::npos) continue;
      return std::make_pair(s.substr(b, e - b + 1), pos - 1);
    }
    return std::nullopt;
  }

  void push_back() { --pos; }
};

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

long to_long(const std::string& s, const Lines& ls, std::size_t lineno) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    ls.fail("expected an integer, got '" + s + "'", lineno);
  }
}

// EisElem tokens look like "[c0 c1 ...]"; rationals in lowest terms.
std::vector<EisElem> parse_vector(const EisensteinExt& ring, const std::string& line,
                                  const Lines& ls, std::size_t lineno) {
  std::vector<EisElem> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    if (line[i] != '[') ls.fail("expected '[' in vector entry", lineno);
    std::size_t close = line.find(']', i);
    if (close == std::string::npos) ls.fail("missing ']' in vector entry", lineno);
    std::vector<Rational> coeffs;
    for (const auto& tk : tokens(line.substr(i + 1, close - i - 1)))
      coeffs.push_back(Rational::parse(tk));
    out.push_back(ring.from_coeffs(coeffs));
    i = close + 1;
  }
  return out;
}

std::string write_elem(const EisensteinExt& ring, const EisElem& a) {
  std::ostringstream os;
  os << '[';
  long top = ring.degree() - 1;
  while (top > 0 && a.c[top].is_zero()) --top;
  for (long i = 0; i <= top; ++i) {
    if (i) os << ' ';
    os << a.c[i];
  }
  os << ']';
  return os.str();
}

std::string write_vector(const EisensteinExt& ring, const KVec& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << write_elem(ring, v[i]);
  }
  return os.str();
}

struct MonomialRows {
  std::vector<long> perm, exponents;
  std::vector<Rational> units;
  std::optional<std::vector<long>> labels;
};

// "slot J -> K : exp E unit U [label L]" rows until the next section header.
MonomialRows parse_monomial_rows(Lines& ls, long count) {
  MonomialRows rows;
  rows.perm.assign(count, -1);
  rows.exponents.assign(count, 0);
  rows.units.assign(count, Rational(1));
  std::vector<long> labels(count, 0);
  bool labels_seen = false;
  long seen = 0;
  while (seen < count) {
    auto ln = ls.next();
    if (!ln) throw ParseError("unexpected end of file inside a slot table");
    auto tk = tokens(ln->first);
    if (tk.size() < 9 || tk[0] != "slot" || tk[2] != "->" || tk[4] != ":" ||
        tk[5] != "exp" || tk[7] != "unit")
      ls.fail("expected 'slot J -> K : exp E unit U [label L]'", ln->second);
    long j = to_long(tk[1], ls, ln->second);
    if (j < 0 || j >= count || rows.perm[j] >= 0) ls.fail("bad or duplicate slot index", ln->second);
    rows.perm[j] = to_long(tk[3], ls, ln->second);
    rows.exponents[j] = to_long(tk[6], ls, ln->second);
    rows.units[j] = Rational::parse(tk[8]);
    if (tk.size() >= 11 && tk[9] == "label") {
      labels[j] = to_long(tk[10], ls, ln->second);
      labels_seen = true;
    }
    ++seen;
  }
  if (labels_seen) rows.labels = labels;
  return rows;
}

void write_monomial_rows(std::ostringstream& os, const std::vector<long>& perm,
                         const std::vector<long>& exponents, const std::vector<Rational>& units,
                         const std::optional<std::vector<long>>& labels) {
  for (std::size_t j = 0; j < perm.size(); ++j) {
    os << "slot " << j << " -> " << perm[j] << " : exp " << exponents[j] << " unit "
       << units[j];
    if (labels) os << " label " << (*labels)[j];
    os << "\n";
  }
}

struct CommonBlocks {
  long p = 0, f = 1, height = 0;
  MonomialRows phi;
  CoefficientField coeff;
  std::optional<EisensteinExt> base;
  std::vector<EisElem> roots;
  std::optional<MonomialRows> action;
};

// Sections shared by object and model files. Returns at EOF or on the
// filtration section, which the caller consumes.
void parse_common(Lines& ls, CommonBlocks& cb, const std::string& phi_section) {
  while (auto ln = ls.next()) {
    auto tk = tokens(ln->first);
    if (tk.empty()) continue;
    if (tk[0] == "p" && tk.size() == 2) {
      cb.p = to_long(tk[1], ls, ln->second);
    } else if (tk[0] == "f" && tk.size() == 2) {
      cb.f = to_long(tk[1], ls, ln->second);
    } else if (tk[0] == "height" && tk.size() == 2) {
      cb.height = to_long(tk[1], ls, ln->second);
    } else if (tk[0] == "[" + phi_section + "]") {
      if (cb.height <= 0) ls.fail("height must come before the slot table", ln->second);
      cb.phi = parse_monomial_rows(ls, cb.height);
    } else if (tk[0] == "[coefficients]") {
      while (auto sub = ls.next()) {
        auto st = tokens(sub->first);
        if (st[0] == "d")
          cb.coeff.d = to_long(st[1], ls, sub->second);
        else if (st[0] == "ef")
          cb.coeff.e_F = to_long(st[1], ls, sub->second);
        else if (st[0] == "ff")
          cb.coeff.f_F = to_long(st[1], ls, sub->second);
        else if (st[0] == "eis") {
          cb.coeff.eis.clear();
          for (std::size_t i = 1; i < st.size(); ++i)
            cb.coeff.eis.push_back(Rational::parse(st[i]));
        } else if (st[0] == "star") {
          std::vector<long> star;
          for (std::size_t i = 1; i < st.size(); ++i) star.push_back(to_long(st[i], ls, sub->second));
          cb.coeff.star = star;
        } else {
          ls.push_back();
          break;
        }
      }
    } else if (tk[0] == "[base]") {
      auto sub = ls.next();
      if (!sub) throw ParseError("missing base polynomial");
      auto st = tokens(sub->first);
      if (st[0] != "eis") ls.fail("expected 'eis c0 c1 ...'", sub->second);
      std::vector<Rational> eis;
      for (std::size_t i = 1; i < st.size(); ++i) eis.push_back(Rational::parse(st[i]));
      cb.base = EisensteinExt(cb.p, eis);
    } else if (tk[0] == "[roots]") {
      if (!cb.base) ls.fail("roots section needs a base section first", ln->second);
      while (auto sub = ls.next()) {
        auto st = tokens(sub->first);
        if (st[0] != "root") {
          ls.push_back();
          break;
        }
        auto v = parse_vector(*cb.base, sub->first.substr(4), ls, sub->second);
        if (v.size() != 1) ls.fail("expected one element per root line", sub->second);
        cb.roots.push_back(v[0]);
      }
    } else if (tk[0] == "[pi_action]") {
      if (cb.height <= 0) ls.fail("height must come before the action table", ln->second);
      cb.action = parse_monomial_rows(ls, cb.height);
    } else {
      ls.push_back();
      return;
    }
  }
}

StandardIsocrystal assemble_isoc(const CommonBlocks& cb) {
  StandardIsocrystal m;
  m.p = cb.p;
  m.f = cb.f;
  m.perm = cb.phi.perm;
  m.exponents = cb.phi.exponents;
  m.units = cb.phi.units;
  if (cb.phi.labels) {
    m.v_labels = cb.phi.labels;
    m.label_modulus = cb.coeff.f_F;
  }
  return m;
}

std::optional<MonomialOperator> assemble_op(const CommonBlocks& cb) {
  if (!cb.action) return std::nullopt;
  return MonomialOperator{cb.action->perm, cb.action->exponents, cb.action->units};
}

}  // namespace

FilteredIsocrystalCx parse_object(const std::string& text) {
  Lines ls(text);
  auto head = ls.next();
  if (!head || tokens(head->first)[0] != "object") throw ParseError("line 1: expected 'object'");
  CommonBlocks cb;
  cb.coeff = CoefficientField{1, 1, 1, {}, std::nullopt};
  parse_common(ls, cb, "isocrystal");
  if (cb.coeff.eis.empty()) cb.coeff.eis = {Rational(-cb.p), Rational(1)};
  auto ln = ls.next();
  if (!ln || tokens(ln->first)[0] != "[filtration]")
    throw ParseError("missing [filtration] section");
  auto tier_line = ls.next();
  if (!tier_line) throw ParseError("missing tier line");
  auto tt = tokens(tier_line->first);
  if (tt.size() != 2 || tt[0] != "tier") ls.fail("expected 'tier A' or 'tier B'", tier_line->second);

  StandardIsocrystal isoc = assemble_isoc(cb);
  auto op = assemble_op(cb);
  if (tt[1] == "B") {
    if (!cb.base) throw ParseError("tier B objects need a [base] section");
    // Two row layouts: whole-space steps ("jump J" followed by rows, or
    // "jump J full"), or the split layout with explicit "tau T" markers that
    // preserves the stored per-embedding bases verbatim.
    std::vector<std::pair<long, KMat>> steps;
    TierB split;
    bool split_form = false, whole_form = false;
    while (auto sub = ls.next()) {
      auto st = tokens(sub->first);
      if (st[0] != "jump") {
        ls.push_back();
        break;
      }
      long jv = to_long(st[1], ls, sub->second);
      if (st.size() == 3 && st[2] == "full") {
        whole_form = true;
        steps.emplace_back(jv, k_identity(*cb.base, cb.height));
        continue;
      }
      auto peek = ls.next();
      if (peek && tokens(peek->first)[0] == "tau") {
        split_form = true;
        ls.push_back();
        std::vector<KMat> per_tau(cb.coeff.d);
        while (auto tline = ls.next()) {
          auto ttk = tokens(tline->first);
          if (ttk[0] != "tau") {
            ls.push_back();
            break;
          }
          long tau = to_long(ttk[1], ls, tline->second);
          if (tau < 0 || tau >= cb.coeff.d) ls.fail("embedding index out of range", tline->second);
          while (auto rline = ls.next()) {
            auto rt = tokens(rline->first);
            if (rt[0] != "row") {
              ls.push_back();
              break;
            }
            KVec v = parse_vector(*cb.base, rline->first.substr(3), ls, rline->second);
            if (static_cast<long>(v.size()) != cb.height)
              ls.fail("row must have one entry per slot", rline->second);
            per_tau[tau].push_back(std::move(v));
          }
        }
        split.jumps.push_back(jv);
        split.fil.push_back(std::move(per_tau));
      } else {
        whole_form = true;
        if (peek) ls.push_back();
        KMat rows;
        while (auto rline = ls.next()) {
          auto rt = tokens(rline->first);
          if (rt[0] != "row") {
            ls.push_back();
            break;
          }
          KVec v = parse_vector(*cb.base, rline->first.substr(3), ls, rline->second);
          if (static_cast<long>(v.size()) != cb.height)
            ls.fail("row must have one entry per slot", rline->second);
          rows.push_back(std::move(v));
        }
        steps.emplace_back(jv, std::move(rows));
      }
    }
    if (split_form && whole_form)
      throw ParseError("mixing whole-space and per-tau filtration rows");
    if (split_form)
      return make_tier_b_split(std::move(isoc), cb.coeff, op, *cb.base, cb.roots,
                               std::move(split));
    return make_tier_b(std::move(isoc), cb.coeff, op, *cb.base, cb.roots, steps);
  }
  if (tt[1] != "A") ls.fail("tier must be A or B", tier_line->second);
  std::vector<GradedProfile> profiles(cb.coeff.d);
  std::map<std::vector<long>, std::vector<GradedProfile>> table;
  while (auto sub = ls.next()) {
    auto st = tokens(sub->first);
    if (st[0] == "profile") {
      if (st.size() != 4 || st[2] != "=") ls.fail("expected 'profile T = jump:dim,...'", sub->second);
      long tau = to_long(st[1], ls, sub->second);
      if (tau < 0 || tau >= cb.coeff.d) ls.fail("embedding index out of range", sub->second);
      profiles[tau] = GradedProfile::parse(st[3]);
    } else if (st[0] == "[subobjects]") {
      while (auto row = ls.next()) {
        auto rt = tokens(row->first);
        if (rt[0] != "slots") {
          ls.push_back();
          break;
        }
        // slots 0,1 : prof0 ; prof1 ; ...
        std::vector<long> slots;
        {
          std::istringstream is(rt[1]);
          std::string piece;
          while (std::getline(is, piece, ',')) slots.push_back(to_long(piece, ls, row->second));
        }
        std::string rest = row->first.substr(row->first.find(':') + 1);
        std::vector<GradedProfile> prof;
        std::istringstream is(rest);
        std::string piece;
        while (std::getline(is, piece, ';')) {
          std::string trimmed;
          for (char c : piece)
            if (c != ' ' && c != '\t') trimmed += c;
          prof.push_back(GradedProfile::parse(trimmed));
        }
        if (static_cast<long>(prof.size()) != cb.coeff.d)
          ls.fail("need one profile per embedding", row->second);
        table[slots] = prof;
      }
    } else {
      ls.push_back();
      break;
    }
  }
  return make_tier_a(std::move(isoc), cb.coeff, op, std::move(profiles), std::move(table));
}

namespace {

void write_common(std::ostringstream& os, const StandardIsocrystal& isoc,
                  const CoefficientField& coeff, const std::optional<MonomialOperator>& op,
                  const EisensteinExt* base, const std::vector<EisElem>& roots,
                  const std::string& phi_section) {
  os << "p " << isoc.p << "\n";
  os << "f " << isoc.f << "\n";
  os << "height " << isoc.height() << "\n";
  os << "[" << phi_section << "]\n";
  write_monomial_rows(os, isoc.perm, isoc.exponents, isoc.units, isoc.v_labels);
  os << "[coefficients]\n";
  os << "d " << coeff.d << "\n";
  os << "ef " << coeff.e_F << "\n";
  os << "ff " << coeff.f_F << "\n";
  os << "eis";
  for (const auto& c : coeff.eis) os << ' ' << c;
  os << "\n";
  if (coeff.star) {
    os << "star";
    for (long v : *coeff.star) os << ' ' << v;
    os << "\n";
  }
  if (base) {
    os << "[base]\neis";
    for (const auto& c : base->eis()) os << ' ' << c;
    os << "\n";
    if (!roots.empty()) {
      os << "[roots]\n";
      for (const auto& r : roots) os << "root " << write_elem(*base, r) << "\n";
    }
  }
  if (op) {
    os << "[pi_action]\n";
    write_monomial_rows(os, op->perm, op->exponents, op->units, std::nullopt);
  }
}

}  // namespace

std::string write_object(const FilteredIsocrystalCx& obj) {
  std::ostringstream os;
  os << "object\n";
  write_common(os, obj.isoc, obj.coeff, obj.pi_op, obj.tier_b() ? &obj.base : nullptr,
               obj.tier_b() ? obj.pi_roots : std::vector<EisElem>{}, "isocrystal");
  os << "[filtration]\n";
  if (obj.tier_b()) {
    os << "tier B\n";
    const TierB& tb = std::get<TierB>(obj.filtration);
    for (std::size_t k = 0; k < tb.jumps.size(); ++k) {
      os << "jump " << tb.jumps[k] << "\n";
      for (long tau = 0; tau < obj.coeff.d; ++tau) {
        os << "tau " << tau << "\n";
        for (const auto& row : tb.fil[k][tau]) os << "row " << write_vector(obj.base, row) << "\n";
      }
    }
  } else {
    os << "tier A\n";
    const TierA& ta = std::get<TierA>(obj.filtration);
    for (long tau = 0; tau < obj.coeff.d; ++tau)
      os << "profile " << tau << " = " << ta.profiles[tau].str() << "\n";
    if (!ta.table.empty()) {
      os << "[subobjects]\n";
      for (const auto& [slots, prof] : ta.table) {
        os << "slots ";
        for (std::size_t i = 0; i < slots.size(); ++i) {
          if (i) os << ',';
          os << slots[i];
        }
        os << " :";
        for (std::size_t i = 0; i < prof.size(); ++i) {
          if (i) os << " ;";
          os << ' ' << prof[i].str();
        }
        os << "\n";
      }
    }
  }
  return os.str();
}

DieudonneLift parse_model(const std::string& text) {
  Lines ls(text);
  auto head = ls.next();
  if (!head || tokens(head->first)[0] != "model") throw ParseError("line 1: expected 'model'");
  std::optional<Variance> variance;
  auto vline = ls.next();
  if (vline) {
    auto vt = tokens(vline->first);
    if (vt.size() == 2 && vt[0] == "variance") {
      if (vt[1] == "covariant") variance = Variance::covariant;
      else if (vt[1] == "contravariant") variance = Variance::contravariant;
      else ls.fail("variance must be covariant or contravariant", vline->second);
    } else {
      ls.push_back();
    }
  }
  CommonBlocks cb;
  cb.coeff = CoefficientField{1, 1, 1, {}, std::nullopt};
  parse_common(ls, cb, "lattice");
  if (cb.coeff.eis.empty()) cb.coeff.eis = {Rational(-cb.p), Rational(1)};
  if (!cb.base) throw ParseError("models need a [base] section");
  DieudonneLift h;
  h.lattice_phi = assemble_isoc(cb);
  h.coeff = cb.coeff;
  h.pi_op = assemble_op(cb);
  h.base = *cb.base;
  h.pi_roots = cb.roots;
  if (h.pi_roots.empty() && h.coeff.e_F == 1)
    h.pi_roots.push_back(h.base.from_rational(-h.coeff.eis[0]));
  if (variance) h.variance = *variance;
  auto ln = ls.next();
  if (ln) {
    auto tk = tokens(ln->first);
    if (tk[0] != "[fil]") ls.fail("expected [fil] section", ln->second);
    while (auto rline = ls.next()) {
      auto rt = tokens(rline->first);
      if (rt[0] != "row") {
        ls.push_back();
        break;
      }
      KVec v = parse_vector(h.base, rline->first.substr(3), ls, rline->second);
      if (static_cast<long>(v.size()) != cb.height)
        ls.fail("row must have one entry per slot", rline->second);
      h.fil_lattice.push_back(std::move(v));
    }
  }
  return h;
}

std::string write_model(const DieudonneLift& h) {
  std::ostringstream os;
  os << "model\n";
  os << "variance " << (h.variance == Variance::covariant ? "covariant" : "contravariant")
     << "\n";
  write_common(os, h.lattice_phi, h.coeff, h.pi_op, &h.base, h.pi_roots, "lattice");
  os << "[fil]\n";
  for (const auto& row : h.fil_lattice) os << "row " << write_vector(h.base, row) << "\n";
  return os.str();
}

TorsionProfile parse_profile(const std::string& text) {
  Lines ls(text);
  auto head = ls.next();
  if (!head || tokens(head->first)[0] != "profile")
    throw ParseError("line 1: expected 'profile'");
  TorsionProfile pr;
  bool have_limit = false;
  while (auto ln = ls.next()) {
    auto tk = tokens(ln->first);
    if (tk[0] == "n")
      pr.n = to_long(tk[1], ls, ln->second);
    else if (tk[0] == "d")
      pr.d = to_long(tk[1], ls, ln->second);
    else if (tk[0] == "e")
      pr.e = to_long(tk[1], ls, ln->second);
    else if (tk[0] == "limit" && tk.size() == 2) {
      pr.hn_limit = parse_polygon(tk[1]);
      have_limit = true;
    } else if (tk[0] == "level" && tk.size() == 3) {
      pr.levels[to_long(tk[1], ls, ln->second)] = parse_polygon(tk[2]);
    } else {
      ls.fail("unexpected line in a profile file", ln->second);
    }
  }
  if (!have_limit) throw ParseError("profile file needs a limit polygon");
  return pr;
}

std::string write_profile(const TorsionProfile& profile) {
  std::ostringstream os;
  os << "profile\n";
  os << "n " << profile.n << "\n";
  os << "d " << profile.d << "\n";
  os << "e " << profile.e << "\n";
  os << "limit " << to_string(profile.hn_limit) << "\n";
  for (const auto& [i, poly] : profile.levels)
    os << "level " << i << " " << to_string(poly) << "\n";
  return os.str();
}

InputKind classify_input(const std::string& text) {
  Lines ls(text);
  auto head = ls.next();
  if (!head) throw ParseError("empty input");
  auto tk = tokens(head->first);
  if (tk[0] == "object") return InputKind::object;
  if (tk[0] == "model") return InputKind::model;
  if (tk[0] == "profile") return InputKind::profile;
  throw ParseError("line 1: expected 'object', 'model' or 'profile'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace isopoly
