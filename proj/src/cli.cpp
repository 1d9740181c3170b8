#include "isopoly/cli.hpp"

#include <CLI11.hpp>
#include <numeric>
#include <sstream>

#include "isopoly/dvrmod.hpp"
#include "isopoly/gen.hpp"
#include "isopoly/io.hpp"

namespace isopoly {

namespace {

FilteredIsocrystalCx worked_split_object(long p) {
  StandardIsocrystal m;
  m.p = p;
  m.f = 1;
  m.perm = {0, 2, 1};
  m.exponents = {-1, -1, 0};
  m.units = {1, 1, 1};
  EisensteinExt base(p, {Rational(-p), 1});
  KMat fil0{{base.zero(), base.one(), base.one()}};
  return make_tier_b(m, CoefficientField::trivial(p), std::nullopt, base, {},
                     {{-1, k_identity(base, 3)}, {0, fil0}});
}

FilteredIsocrystalCx symmetric_split_object(long p) {
  StandardIsocrystal m;
  m.p = p;
  m.f = 1;
  m.perm = {0, 2, 1, 3};
  m.exponents = {-1, -1, 0, 0};
  m.units = {1, 1, 1, 1};
  EisensteinExt base(p, {Rational(-p), 1});
  KMat fil0{{base.zero(), base.zero(), base.zero(), base.one()},
            {base.zero(), base.one(), base.one(), base.zero()}};
  return make_tier_b(m, CoefficientField::trivial(p), std::nullopt, base, {},
                     {{-1, k_identity(base, 4)}, {0, fil0}});
}

TorsionProfile synthetic_profile(long depth) {
  TorsionProfile pr;
  pr.n = 3;
  pr.d = 1;
  pr.e = 4;
  pr.hn_limit = parse_polygon("(0,0);(1,1);(3,2)");
  for (long i = 1; i <= depth; ++i) {
    std::vector<Point> verts{{0, 0},
                             {Rational(i), Rational(i)},
                             {Rational(2 * i), Rational(3 * i, 2) + Rational(1, 4)},
                             {Rational(3 * i), Rational(2 * i)}};
    pr.levels[i] = ConcavePolygon::from_vertices(verts);
  }
  return pr;
}

struct LoadedInput {
  InputKind kind;
  std::string text;
};

LoadedInput load_input(const std::string& arg, long p) {
  std::string name = arg;
  if (name.rfind("examples/", 0) == 0) name = name.substr(9);
  auto builtins = builtin_examples(p);
  auto it = builtins.find(name);
  std::string text = it != builtins.end() ? it->second : read_file(arg);
  return {classify_input(text), text};
}

// Loads an object, converting models through the functor.
FilteredIsocrystalCx load_object(const std::string& arg, long p) {
  LoadedInput in = load_input(arg, p);
  if (in.kind == InputKind::object) return parse_object(in.text);
  if (in.kind == InputKind::model) return to_filtered_isocrystal(parse_model(in.text));
  throw ParseError("'" + arg + "' is a torsion profile, not an object or model");
}

Point parse_point(const std::string& s) {
  std::size_t comma = s.find(',');
  if (comma == std::string::npos) throw ParseError("--z expects 'x,y'");
  return {Rational::parse(s.substr(0, comma)), Rational::parse(s.substr(comma + 1))};
}

std::string ascii_plot(const std::vector<std::pair<std::string, ConcavePolygon>>& polys) {
  // Rasterize on a fixed character grid; later polygons overwrite earlier
  // ones where they collide.
  const long width = 48, height = 14;
  Rational xmax = 0, ymax = 0, ymin = 0;
  for (const auto& [name, poly] : polys) {
    if (xmax < poly.domain_end()) xmax = poly.domain_end();
    for (const auto& v : poly.vertices()) {
      if (ymax < v.y) ymax = v.y;
      if (v.y < ymin) ymin = v.y;
    }
  }
  if (xmax.is_zero()) return "(empty domain)\n";
  if (ymax == ymin) ymax = ymin + 1;
  const char marks[] = "*+o#";
  std::vector<std::string> grid(height, std::string(width, ' '));
  std::ostringstream legend;
  for (std::size_t pi = 0; pi < polys.size(); ++pi) {
    const auto& [name, poly] = polys[pi];
    char mark = marks[pi % 4];
    legend << (pi ? ", " : "") << mark << " = " << name;
    for (long c = 0; c < width; ++c) {
      Rational x = xmax * Rational(c, width - 1);
      if (poly.domain_end() < x) continue;
      Rational t = (poly.eval(x) - ymin) / (ymax - ymin);
      long row = (height - 1) - (t * Rational(height - 1)).floor().get_si();
      if (row < 0) row = 0;
      if (row >= height) row = height - 1;
      grid[row][c] = mark;
    }
  }
  std::ostringstream os;
  for (const auto& line : grid) os << line << "\n";
  os << legend.str() << "\n";
  os << "x: 0 .. " << xmax << ", y: " << ymin << " .. " << ymax << "\n";
  return os.str();
}

std::string svg_plot(const std::vector<std::pair<std::string, ConcavePolygon>>& polys) {
  // Integer pixel coordinates: scale by 48 times the common denominator, so
  // no decimal literals appear anywhere.
  mpz_class denom = 1;
  Rational xmax = 1, ymax = 1, ymin = 0;
  for (const auto& [name, poly] : polys) {
    if (xmax < poly.domain_end()) xmax = poly.domain_end();
    for (const auto& v : poly.vertices()) {
      mpz_class l;
      mpz_lcm(l.get_mpz_t(), denom.get_mpz_t(), v.x.den().get_mpz_t());
      mpz_lcm(denom.get_mpz_t(), l.get_mpz_t(), v.y.den().get_mpz_t());
      if (ymax < v.y) ymax = v.y;
      if (v.y < ymin) ymin = v.y;
    }
  }
  Rational scale(48 * denom, 1);
  auto px = [&](const Rational& x) { return (x * scale).num(); };
  auto py = [&](const Rational& y) { return ((ymax - y) * scale).num(); };
  const char* colors[] = {"#1f6f43", "#27499e", "#a33b3b", "#77651f"};
  std::ostringstream os;
  mpz_class w = px(xmax) + 2 * px(Rational(1, 2));
  mpz_class h = py(ymin) + 2 * px(Rational(1, 2));
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << -px(Rational(1, 4)) << " "
     << -px(Rational(1, 4)) << " " << w << " " << h << "\">\n";
  // unit grid
  os << "<g stroke=\"#cccccc\" stroke-width=\"" << (scale / Rational(40)).floor() << "\">\n";
  for (mpz_class gx = 0; gx <= xmax.floor(); ++gx)
    os << "<line x1=\"" << px(Rational(gx, 1)) << "\" y1=\"" << py(ymax) << "\" x2=\""
       << px(Rational(gx, 1)) << "\" y2=\"" << py(ymin) << "\"/>\n";
  for (mpz_class gy = ymin.floor(); gy <= ymax.floor(); ++gy)
    os << "<line x1=\"0\" y1=\"" << py(Rational(gy, 1)) << "\" x2=\"" << px(xmax)
       << "\" y2=\"" << py(Rational(gy, 1)) << "\"/>\n";
  os << "</g>\n";
  int ci = 0;
  for (const auto& [name, poly] : polys) {
    const char* color = colors[ci % 4];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
       << (scale / Rational(16)).floor() << "\" points=\"";
    for (const auto& v : poly.vertices()) os << px(v.x) << "," << py(v.y) << " ";
    os << "\"/>\n";
    for (const auto& v : poly.vertices()) {
      os << "<circle cx=\"" << px(v.x) << "\" cy=\"" << py(v.y) << "\" r=\""
         << (scale / Rational(12)).floor() << "\" fill=\"" << color << "\"/>\n";
      os << "<text x=\"" << px(v.x) + (scale / Rational(10)).floor() << "\" y=\""
         << py(v.y) - (scale / Rational(10)).floor() << "\" font-size=\""
         << (scale / Rational(4)).floor() << "\" fill=\"" << color << "\">(" << v.x << ","
         << v.y << ")</text>\n";
    }
    ++ci;
  }
  os << "</svg>\n";
  return os.str();
}

void print_polygons(std::ostream& out, const std::string& format,
                    const std::vector<std::pair<std::string, ConcavePolygon>>& polys) {
  if (format == "ascii") {
    out << ascii_plot(polys);
    return;
  }
  if (format == "svg") {
    out << svg_plot(polys);
    return;
  }
  for (const auto& [name, poly] : polys) out << name << ": " << to_string(poly) << "\n";
}

int cmd_invariants(const std::string& input, long p, const std::string& format,
                   std::ostream& out) {
  FilteredIsocrystalCx obj = load_object(input, p);
  ConcavePolygon newt = newt_cx(obj);
  ConcavePolygon hdg = hodge_cx(obj);
  auto wa = is_weakly_admissible(obj);
  std::vector<std::pair<std::string, ConcavePolygon>> polys{{"Newt", newt}, {"Hdg", hdg}};
  std::optional<ConcavePolygon> hn;
  if (wa.wa()) {
    hn = hn_polygon_cx(obj);
    polys.push_back({"HN", *hn});
  }
  print_polygons(out, format, polys);
  if (format == "text") {
    out << "end point: (" << newt.domain_end() << "," << newt.end_value() << ")"
        << "  t_N " << t_N(obj) << ", t_H " << t_H(obj) << "\n";
    if (!wa.wa()) out << "not weakly admissible; HN undefined\n";
    else if (!wa.family_complete)
      out << "weak admissibility certified over the standard subobject family\n";
  }
  return 0;
}

int cmd_polygon(const std::string& input, const std::string& format, std::ostream& out) {
  std::string text;
  try {
    text = read_file(input);
    // take the first non-empty line of the file
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line) && line.empty()) {
    }
    text = line;
  } catch (const ParseError&) {
    text = input;  // literal serialization
  }
  ConcavePolygon poly = parse_polygon(text);
  print_polygons(out, format, {{"polygon", poly}});
  if (format == "text") {
    out << "dual: " << to_string(dual(poly)) << "\n";
    out << "symmetric: " << (is_symmetric(poly) ? "yes" : "no") << "\n";
    std::ostringstream bp;
    for (const auto& z : poly.break_points()) bp << " (" << z.x << "," << z.y << ")";
    out << "break points:" << (bp.str().empty() ? " none" : bp.str()) << "\n";
  }
  return 0;
}

void print_triple(std::ostream& out, const std::string& label, const PolygonTriple& t,
                  const std::string& format) {
  if (format == "text") {
    out << label << " Newt: " << to_string(t.newt) << "\n";
    out << label << " Hdg:  " << to_string(t.hdg) << "\n";
    out << label << " HN:   " << to_string(t.hn) << "\n";
  } else {
    print_polygons(out, format, {{"Newt", t.newt}, {"Hdg", t.hdg}, {"HN", t.hn}});
  }
}

int cmd_reduce(const std::string& input, const std::string& zarg,
               const std::string& profile_path, long p, const std::string& format,
               std::ostream& out) {
  FilteredIsocrystalCx obj = load_object(input, p);
  ConcavePolygon newt = newt_cx(obj);
  ConcavePolygon hdg = hodge_cx(obj);
  auto candidates = detect_hodge_newton_reducible(newt, hdg);
  if (zarg.empty()) {
    out << "candidate break points:";
    if (candidates.empty()) out << " none";
    for (const auto& z : candidates) out << " (" << z.x << "," << z.y << ")";
    out << "\n";
    return candidates.empty() ? 1 : 0;
  }
  Point z = parse_point(zarg);
  std::optional<TorsionProfile> profile;
  if (!profile_path.empty()) profile = parse_profile(read_file(profile_path));
  SplitResult res = theorem_3_9(obj, z, profile ? &*profile : nullptr);
  out << "split at (" << z.x << "," << z.y << ")\n";
  print_triple(out, "part1", res.before, format);
  print_triple(out, "part2", res.after, format);
  out << "identities: " << (res.identities_ok ? "ok" : "FAILED") << ", parts wa: "
      << (res.parts_wa ? "ok" : "FAILED") << "\n";
  return res.identities_ok && res.parts_wa ? 0 : 1;
}

int cmd_polarised_reduce(const std::string& input, const std::string& zarg, long p,
                         const std::string& format, std::ostream& out) {
  FilteredIsocrystalCx obj = load_object(input, p);
  Point z = parse_point(zarg);
  PolarisedSplitResult res = corollary_3_11(obj, z);
  out << "split at (" << res.z.x << "," << res.z.y << ") and (" << res.z_dual.x << ","
      << res.z_dual.y << ")\n";
  print_triple(out, "part1", res.poly1, format);
  if (!res.middle_empty) print_triple(out, "part2", res.poly2, format);
  print_triple(out, "part3", res.poly3, format);
  out << "part3 = dual(part1): " << (res.duality_ok ? "ok" : "FAILED") << "\n";
  if (!res.middle_empty)
    out << "middle symmetric: " << (res.middle_symmetric ? "ok" : "FAILED") << "\n";
  return res.duality_ok && (res.middle_empty || res.middle_symmetric) ? 0 : 1;
}

int cmd_simulate(const std::string& input, const std::string& zarg, long p, std::ostream& out) {
  LoadedInput in = load_input(input, p);
  if (in.kind != InputKind::profile) throw ParseError("simulate-3-2 expects a torsion profile");
  TorsionProfile profile = parse_profile(in.text);
  Point z = parse_point(zarg);
  SimulationTrace trace = prop_3_2_simulate(profile, z);
  out << "dualised: " << (trace.dualised ? "yes" : "no") << "\n";
  out << "z1: (" << trace.z1.x << "," << trace.z1.y << "), mu: " << trace.mu << "\n";
  for (const auto& s : trace.steps)
    out << "level " << s.level << ": z_i (" << s.z_i.x << "," << s.z_i.y << ") ht "
        << s.ht_g << " deg " << s.deg_g << (s.on_level1 ? "" : " [off level 1]") << "\n";
  out << "a_i:";
  for (long a : trace.a_seq) out << " " << a;
  out << (trace.a_nonincreasing ? " (non-increasing)" : " (VIOLATION)") << "\n";
  if (trace.i0) out << "i0: " << *trace.i0 << "\n";
  if (trace.conclusive)
    out << "answer: ht " << trace.answer.first << ", dim " << trace.answer.second << "\n";
  else
    out << "inconclusive at depth: " << trace.detail << "\n";
  return trace.conclusive ? 0 : 1;
}

int cmd_check(const std::string& which, const std::vector<std::string>& inputs, long p,
              long count, std::uint64_t seed, std::ostream& out) {
  if (which == "wa") {
    FilteredIsocrystalCx obj = load_object(inputs.at(0), p);
    auto rep = is_weakly_admissible(obj);
    out << "t_H = t_N on the object: " << (rep.top_equality ? "ok" : "FAILED") << "\n";
    out << "subobject inequalities: " << (rep.subobjects_ok ? "ok" : "FAILED") << "\n";
    if (rep.violation) {
      out << "violating slots:";
      for (long s : rep.violation->slots) out << " " << s;
      out << " (t_H " << rep.violation->t_h << " > t_N " << rep.violation->t_n << ")\n";
    }
    if (!rep.family_complete)
      out << "note: repeated isotypes; verdict certified over the standard family\n";
    return rep.wa() ? 0 : 1;
  }
  if (which == "chain") {
    FilteredIsocrystalCx obj = load_object(inputs.at(0), p);
    auto rep = verify_inequality_chain(obj);
    out << "HN <= Newt: " << (rep.hn_le_newt ? "ok" : "FAILED") << "\n";
    out << "Newt <= Hdg: " << (rep.newt_le_hdg ? "ok" : "FAILED") << "\n";
    if (!rep.ok() && rep.witness_x) out << "witness x = " << *rep.witness_x << "\n";
    return rep.ok() ? 0 : 1;
  }
  if (which == "prop2_8") {
    LoadedInput in = load_input(inputs.at(0), p);
    TorsionProfile profile = parse_profile(in.text);
    auto rep = check_prop_2_8(profile);
    if (rep.ok) {
      out << "prop 2.8 invariants: ok\n";
      return 0;
    }
    out << "prop 2.8 violation: " << rep.reason;
    if (rep.failing_x) out << " at x = " << *rep.failing_x;
    out << "\n";
    return 1;
  }
  if (which == "prop2_14") {
    TorsionProfile profile = parse_profile(load_input(inputs.at(0), p).text);
    ConcavePolygon hdg;
    try {
      hdg = parse_polygon(inputs.at(1));
    } catch (const ParseError&) {
      hdg = hodge_cx(load_object(inputs.at(1), p));
    }
    auto rep = check_prop_2_14(profile, hdg);
    if (rep.ok) {
      out << "HN(H[p]) <= Hdg(H): ok\n";
      return 0;
    }
    out << "prop 2.14 violation: " << rep.reason;
    if (rep.failing_x) out << " at x = " << *rep.failing_x;
    out << "\n";
    return 1;
  }
  if (which == "lemma2_12") {
    Rng rng(seed);
    long done = 0;
    long failures = 0;
    std::uint64_t attempt = 0;
    while (done < count) {
      Rng fork = rng.fork(attempt++);
      long pp = std::vector<long>{2, 3, 5}[fork.range(0, 2)];
      DVRTower t;
      std::vector<Rational> eis{Rational(-pp), 0, 1};
      if (fork.coin()) {
        t.base = EisensteinExt(pp, eis);
        t.inner = EisensteinExt(pp, eis);
        EisElem rt = t.base.uniformizer();
        t.roots = {rt, t.base.neg(rt)};
      } else if (fork.coin()) {
        // degree-1 inner ring over a ramified base
        t.base = EisensteinExt(pp, eis);
        t.inner = EisensteinExt(pp, {Rational(-pp), 1});
        t.roots = {t.base.from_rational(Rational(pp))};
      } else {
        // quadratic split pair over a quartic base
        long gamma = fork.coin() ? 1 : pp + 1;
        long a = fork.coin() ? 1 : pp + 1;
        t.base = EisensteinExt(pp, {Rational(-pp * gamma), 0, 0, 0, 1});
        Rational b(pp * fork.range(1, 2));
        t.inner = EisensteinExt(pp, {b * b - Rational(a * a * pp * gamma), Rational(-2) * b, 1});
        EisElem at2 = t.base.mul_rat(t.base.pow(t.base.uniformizer(), 2), Rational(a));
        EisElem bb = t.base.from_rational(b);
        t.roots = {t.base.add(bb, at2), t.base.sub(bb, at2)};
      }
      t.validate();
      long r = fork.range(1, 3);
      KMat g(r, KVec(r, t.inner.zero()));
      for (long i = 0; i < r; ++i)
        for (long j = 0; j < r; ++j)
          g[i][j] = t.inner.from_coeffs(
              {Rational(fork.range(0, 2 * pp)), Rational(fork.range(0, pp))});
      if (t.inner.is_zero(k_det(t.inner, g))) continue;
      long dp = t.dprime();
      bool all_ok = true;
      for (long mask = 0; mask < (1 << dp); ++mask) {
        std::vector<long> I;
        for (long l = 0; l < dp; ++l)
          if (mask & (1 << l)) I.push_back(l);
        auto res = lemma_2_12(t, g, I);
        if (!res.agree) all_ok = false;
      }
      if (!all_ok) {
        ++failures;
        if (failures == 1) out << "counterexample at instance " << done << "\n";
      }
      ++done;
    }
    out << (count - failures) << "/" << count << " ok\n";
    return failures == 0 ? 0 : 1;
  }
  if (which == "lemma2_10") {
    long pp = p;
    auto ex = example_2_11(pp);
    auto rep = lemma_2_10_check(pp, ex.inclusion_components);
    out << "component lengths:";
    for (const auto& l : rep.component_lengths) out << " " << l;
    out << " (total " << rep.total << ")\n";
    out << "constant across inertia components: " << (rep.constant ? "yes" : "NO") << "\n";
    return rep.constant ? 0 : 1;
  }
  if (which == "duality") {
    LoadedInput in = load_input(inputs.at(0), p);
    if (in.kind != InputKind::model) throw ParseError("check duality expects a model");
    DieudonneLift h = parse_model(in.text);
    auto rep = duality_and_polarisation_check(h, true);
    out << "Newt(H^) = Newt(H)^: " << (rep.newt_dual_ok ? "ok" : "FAILED") << "\n";
    out << "Hdg(H^) = Hdg(H)^:  " << (rep.hdg_dual_ok ? "ok" : "FAILED") << "\n";
    out << "HN(H^) = HN(H)^:   " << (rep.hn_dual_ok ? "ok" : "FAILED") << "\n";
    out << "polygons symmetric (polarisable): " << (rep.polarised_symmetric ? "yes" : "no")
        << "\n";
    return rep.newt_dual_ok && rep.hdg_dual_ok && rep.hn_dual_ok ? 0 : 1;
  }
  throw ParseError("unknown check '" + which + "'");
}

int cmd_fuzz(const std::string& target, long count, std::uint64_t seed, long p,
             std::ostream& out) {
  Rng rng(seed);
  GenOptions opts;
  opts.p = p;
  long ok = 0, failures = 0;
  std::string label;
  for (long k = 0; k < count; ++k) {
    Rng fork = rng.fork(k);
    bool pass = false;
    try {
      if (target == "chain") {
        label = "HN <= Newt <= Hdg";
        auto obj = random_wa_instance(fork, opts);
        pass = verify_inequality_chain(obj).ok();
      } else if (target == "split") {
        label = "split identities";
        auto [obj, z] = random_reducible_instance(fork, opts);
        auto res = split_filtered_isocrystal(obj, z);
        pass = res.identities_ok && res.parts_wa &&
               concat(res.before.newt, res.after.newt) == newt_cx(obj) &&
               concat(res.before.hdg, res.after.hdg) == hodge_cx(obj);
      } else if (target == "duality") {
        label = "dual involution + polarised splits";
        auto poly = random_polygon(fork);
        pass = dual(dual(poly)) == poly;
        if (pass && k % 4 == 0) {
          auto [obj, z] = random_polarised_instance(fork, opts);
          auto res = corollary_3_11(obj, z);
          pass = res.duality_ok && (res.middle_empty || res.middle_symmetric);
        }
      } else if (target == "simulate") {
        label = "prop 3.2 simulations";
        auto [profile, z] = random_torsion_profile(fork, 8);
        auto trace = prop_3_2_simulate(profile, z);
        pass = trace.conclusive && trace.a_nonincreasing &&
               trace.answer.first == Rational(profile.d) * z.x &&
               trace.answer.second == Rational(profile.d) * z.y;
      } else {
        throw ParseError("unknown fuzz target '" + target + "'");
      }
    } catch (const DomainError& e) {
      pass = false;
      if (failures == 0) out << "error at instance " << k << ": " << e.what() << "\n";
    }
    if (pass) {
      ++ok;
    } else {
      ++failures;
      if (failures == 1) out << "first failing instance: " << k << "\n";
    }
  }
  out << label << ": " << ok << "/" << count << "\n";
  return failures == 0 ? 0 : 1;
}

int cmd_examples(const std::string& name, long p, std::ostream& out) {
  auto builtins = builtin_examples(p);
  if (name.empty()) {
    for (const auto& [key, text] : builtins) {
      InputKind kind = classify_input(text);
      const char* k = kind == InputKind::object ? "object"
                      : kind == InputKind::model ? "model"
                                                 : "profile";
      out << key << " (" << k << ")\n";
    }
    return 0;
  }
  auto it = builtins.find(name);
  if (it == builtins.end()) throw ParseError("no built-in example named '" + name + "'");
  out << it->second;
  return 0;
}

}  // namespace

std::map<std::string, std::string> builtin_examples(long p) {
  std::map<std::string, std::string> out;
  auto [h0, h1] = example_2_4(p);
  out["ex2_4_H0"] = write_model(h0);
  out["ex2_4_H1"] = write_model(h1);
  auto ex = example_2_11(p);
  out["ex2_11_M"] = write_model(ex.m_lift);
  out["ex2_11_Mprime"] = write_model(ex.mprime_lift);
  out["worked_split"] = write_object(worked_split_object(p));
  out["symmetric_split"] = write_object(symmetric_split_object(p));
  out["torsion_synthetic"] = write_profile(synthetic_profile(8));
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact Newton/Hodge/Harder-Narasimhan polygon calculator"};
  app.require_subcommand(1);
  long p = 3;
  app.add_option("--p", p, "prime for built-in examples and campaigns");
  std::string format = "text";

  std::string input, zarg, profile_path, which, target, name;
  long count = 100;
  std::uint64_t seed = 0;

  auto* inv = app.add_subcommand("invariants", "Newt/Hdg/HN of an object or model");
  inv->add_option("input", input)->required();
  inv->add_option("--format", format)->check(CLI::IsMember({"text", "ascii", "svg"}));

  auto* pol = app.add_subcommand("polygon", "inspect a polygon serialization");
  pol->add_option("input", input)->required();
  pol->add_option("--format", format)->check(CLI::IsMember({"text", "ascii", "svg"}));

  auto* red = app.add_subcommand("reduce", "Hodge-Newton split at a break point");
  red->add_option("input", input)->required();
  red->add_option("--z", zarg, "break point as x,y; omit to list candidates");
  red->add_option("--profile", profile_path, "torsion profile file for the level-1 gate");
  red->add_option("--format", format)->check(CLI::IsMember({"text", "ascii", "svg"}));

  auto* pred = app.add_subcommand("polarised-reduce", "three-part split of a polarised object");
  pred->add_option("input", input)->required();
  pred->add_option("--z", zarg)->required();
  pred->add_option("--format", format)->check(CLI::IsMember({"text", "ascii", "svg"}));

  auto* sim = app.add_subcommand("simulate-3-2", "break-point bookkeeping over a torsion profile");
  sim->add_option("input", input)->required();
  sim->add_option("--z", zarg)->required();

  auto* chk = app.add_subcommand("check", "run a named certification");
  chk->add_option("which", which)
      ->required()
      ->check(CLI::IsMember({"wa", "chain", "prop2_8", "prop2_14", "lemma2_12", "lemma2_10",
                             "duality"}));
  std::vector<std::string> check_inputs;
  chk->add_option("inputs", check_inputs, "input files or built-in names");
  chk->add_option("--count", count);
  chk->add_option("--seed", seed);

  auto* fz = app.add_subcommand("fuzz", "seeded randomized campaigns");
  fz->add_option("target", target)
      ->required()
      ->check(CLI::IsMember({"chain", "split", "duality", "simulate"}));
  fz->add_option("--count", count);
  fz->add_option("--seed", seed);

  auto* exs = app.add_subcommand("examples", "list or print built-in inputs");
  exs->add_option("name", name);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (inv->parsed()) return cmd_invariants(input, p, format, out);
    if (pol->parsed()) return cmd_polygon(input, format, out);
    if (red->parsed()) return cmd_reduce(input, zarg, profile_path, p, format, out);
    if (pred->parsed()) return cmd_polarised_reduce(input, zarg, p, format, out);
    if (sim->parsed()) return cmd_simulate(input, zarg, p, out);
    if (chk->parsed()) return cmd_check(which, check_inputs, p, count, seed, out);
    if (fz->parsed()) return cmd_fuzz(target, count, seed, p, out);
    if (exs->parsed()) return cmd_examples(name, p, out);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const FidelityError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ModelViolation& e) {
    err << "model violation: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    err << "check failure: " << e.what() << "\n";
    return 1;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace isopoly
