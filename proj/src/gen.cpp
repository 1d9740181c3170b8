#include "isopoly/gen.hpp"

#include <algorithm>
#include <numeric>

namespace isopoly {

namespace {

struct Skeleton {
  StandardIsocrystal isoc;
  CoefficientField coeff;
  std::optional<MonomialOperator> pi_op;
  EisensteinExt base;
  std::vector<EisElem> pi_roots;
};

std::vector<long> random_permutation(Rng& rng, long n) {
  std::vector<long> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (long i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.range(0, i)]);
  return perm;
}

Rational random_unit(Rng& rng, long p) {
  long u = rng.range(1, 5);
  while (u % p == 0) ++u;
  return rng.coin() ? Rational(u) : Rational(-u);
}

// d = 1 shape: plain isocrystal over a base of ramification 1 or 2.
Skeleton skeleton_plain(Rng& rng, long p, long n, long exp_lo, long exp_hi) {
  Skeleton sk;
  sk.isoc.p = p;
  sk.isoc.f = 1;
  sk.isoc.perm = random_permutation(rng, n);
  for (long j = 0; j < n; ++j) {
    sk.isoc.exponents.push_back(rng.range(exp_lo, exp_hi));
    sk.isoc.units.push_back(random_unit(rng, p));
  }
  sk.coeff = CoefficientField::trivial(p);
  sk.base = rng.coin() ? EisensteinExt(p, {Rational(-p), 1})
                       : EisensteinExt(p, {Rational(-p), 0, 1});
  return sk;
}

// Unramified d = f_F = 2: labels alternate and phi swaps the label classes.
Skeleton skeleton_unramified(Rng& rng, long p, long n, long exp_lo, long exp_hi) {
  Skeleton sk;
  long h = 2 * n;
  sk.isoc.p = p;
  sk.isoc.f = 2;
  sk.isoc.label_modulus = 2;
  sk.isoc.v_labels.emplace(h, 0);
  for (long j = n; j < h; ++j) (*sk.isoc.v_labels)[j] = 1;
  std::vector<long> to1 = random_permutation(rng, n);
  std::vector<long> to0 = random_permutation(rng, n);
  sk.isoc.perm.assign(h, 0);
  for (long j = 0; j < n; ++j) sk.isoc.perm[j] = n + to1[j];
  for (long j = 0; j < n; ++j) sk.isoc.perm[n + j] = to0[j];
  for (long j = 0; j < h; ++j) {
    sk.isoc.exponents.push_back(rng.range(exp_lo, exp_hi));
    sk.isoc.units.push_back(random_unit(rng, p));
  }
  sk.coeff = CoefficientField{2, 1, 2, {Rational(-p), 1}, std::nullopt};
  sk.base = EisensteinExt(p, {Rational(-p), 1});
  return sk;
}

// Blocks (u_s, w_s) with the ramified operator u -> w -> p u; phi permutes
// blocks with one of two commuting patterns per block.
void add_ramified_blocks(Rng& rng, Skeleton& sk, long nblocks, long label_count,
                         long exp_lo, long exp_hi) {
  long p = sk.isoc.p;
  long h = 2 * nblocks;
  // block s occupies slots 2s (u) and 2s+1 (w); labels constant per block,
  // phi maps label-v blocks to label-(v+1) blocks
  std::vector<long> block_label(nblocks, 0);
  if (label_count > 1)
    for (long s = 0; s < nblocks; ++s) block_label[s] = s % label_count;
  std::vector<std::vector<long>> by_label(label_count);
  for (long s = 0; s < nblocks; ++s) by_label[block_label[s]].push_back(s);
  // rho maps blocks of label v to blocks of label v+1 (label classes must be
  // equal-sized; callers arrange that)
  std::vector<long> rho(nblocks, 0);
  for (long v = 0; v < label_count; ++v) {
    const auto& src = by_label[v];
    const auto& dst = by_label[(v + 1) % label_count];
    std::vector<long> shuffle = random_permutation(rng, static_cast<long>(src.size()));
    for (std::size_t i = 0; i < src.size(); ++i) rho[src[i]] = dst[shuffle[i]];
  }
  sk.isoc.perm.assign(h, 0);
  sk.isoc.exponents.assign(h, 0);
  sk.isoc.units.assign(h, Rational(1));
  MonomialOperator op;
  op.perm.assign(h, 0);
  op.exponents.assign(h, 0);
  op.units.assign(h, Rational(1));
  if (label_count > 1) {
    sk.isoc.v_labels.emplace(h, 0);
    sk.isoc.label_modulus = label_count;
  }
  for (long s = 0; s < nblocks; ++s) {
    long u = 2 * s, w = 2 * s + 1;
    op.perm[u] = w;  // u -> w, exponent 0
    op.perm[w] = u;  // w -> p u
    op.exponents[w] = 1;
    if (sk.isoc.v_labels) {
      (*sk.isoc.v_labels)[u] = block_label[s];
      (*sk.isoc.v_labels)[w] = block_label[s];
    }
    long ut = 2 * rho[s], wt = 2 * rho[s] + 1;
    long alpha = rng.range(exp_lo, exp_hi);
    Rational c = random_unit(rng, p);
    if (rng.coin()) {
      // type A: u -> u', w -> w', same exponent and unit
      sk.isoc.perm[u] = ut;
      sk.isoc.perm[w] = wt;
      sk.isoc.exponents[u] = alpha;
      sk.isoc.exponents[w] = alpha;
      sk.isoc.units[u] = c;
      sk.isoc.units[w] = c;
    } else {
      // type B: u -> w', w -> p u', same unit
      sk.isoc.perm[u] = wt;
      sk.isoc.perm[w] = ut;
      sk.isoc.exponents[u] = alpha;
      sk.isoc.exponents[w] = alpha + 1;
      sk.isoc.units[u] = c;
      sk.isoc.units[w] = c;
    }
  }
  sk.pi_op = op;
}

Skeleton skeleton_ramified(Rng& rng, long p, long n, long exp_lo, long exp_hi) {
  Skeleton sk;
  sk.isoc.p = p;
  sk.isoc.f = 1;
  add_ramified_blocks(rng, sk, n, 1, exp_lo, exp_hi);
  sk.coeff = CoefficientField{2, 2, 1, {Rational(-p), 0, 1}, std::nullopt};
  sk.base = EisensteinExt(p, {Rational(-p), 0, 1});
  EisElem rt = sk.base.uniformizer();
  sk.pi_roots = {rt, sk.base.neg(rt)};
  return sk;
}

Skeleton skeleton_d4(Rng& rng, long p, long n, long exp_lo, long exp_hi) {
  Skeleton sk;
  sk.isoc.p = p;
  sk.isoc.f = 2;
  add_ramified_blocks(rng, sk, 2 * n, 2, exp_lo, exp_hi);
  sk.coeff = CoefficientField{4, 2, 2, {Rational(-p), 0, 1}, std::nullopt};
  sk.base = EisensteinExt(p, {Rational(-p), 0, 1});
  EisElem rt = sk.base.uniformizer();
  sk.pi_roots = {rt, sk.base.neg(rt)};
  return sk;
}

// Invertible n x n matrix over the base: unit diagonal plus random
// triangular mixing.
KMat random_invertible(Rng& rng, const EisensteinExt& ring, long n) {
  KMat m = k_identity(ring, n);
  auto rand_elem = [&]() {
    EisElem a = ring.zero();
    for (long i = 0; i < ring.degree(); ++i)
      if (rng.coin()) a.c[i] = Rational(rng.range(-2, 2));
    return a;
  };
  // lower then upper unipotent sweeps keep the matrix invertible
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < i; ++j)
      if (rng.coin()) {
        EisElem f = rand_elem();
        for (long c = 0; c < n; ++c) m[i][c] = ring.add(m[i][c], ring.mul(f, m[j][c]));
      }
  for (long i = n - 1; i >= 0; --i)
    for (long j = i + 1; j < n; ++j)
      if (rng.coin()) {
        EisElem f = rand_elem();
        for (long c = 0; c < n; ++c) m[i][c] = ring.add(m[i][c], ring.mul(f, m[j][c]));
      }
  return m;
}

// Assign one jump value to each of the d*n filtration lines so the total
// degree equals t_N, then assemble nested per-tau bases.
FilteredIsocrystalCx attach_filtration(Rng& rng, Skeleton sk, long jump_lo, long jump_hi) {
  FilteredIsocrystalCx skel;
  skel.isoc = sk.isoc;
  skel.coeff = sk.coeff;
  skel.pi_op = sk.pi_op;
  skel.base = sk.base;
  if (sk.pi_roots.empty() && sk.coeff.e_F == 1)
    sk.pi_roots.push_back(sk.base.from_rational(Rational(sk.isoc.p)));
  skel.pi_roots = sk.pi_roots;
  long d = sk.coeff.d;
  long n = sk.isoc.height() / d;
  skel.filtration = TierA{std::vector<GradedProfile>(d, GradedProfile::trivial(n)), {}};
  skel.validate();

  long target = dimension(sk.isoc);
  if (target < d * n * jump_lo || target > d * n * jump_hi)
    throw DomainError("degree target unreachable within the jump window");
  std::vector<std::vector<long>> line_jumps(d, std::vector<long>(n));
  long total = 0;
  for (long tau = 0; tau < d; ++tau)
    for (long i = 0; i < n; ++i) {
      line_jumps[tau][i] = rng.range(jump_lo, jump_hi);
      total += line_jumps[tau][i];
    }
  while (total != target) {
    long tau = rng.range(0, d - 1);
    long i = rng.range(0, n - 1);
    if (total < target && line_jumps[tau][i] < jump_hi) {
      ++line_jumps[tau][i];
      ++total;
    } else if (total > target && line_jumps[tau][i] > jump_lo) {
      --line_jumps[tau][i];
      --total;
    }
  }

  std::vector<long> jumps;
  for (long tau = 0; tau < d; ++tau)
    for (long i = 0; i < n; ++i) jumps.push_back(line_jumps[tau][i]);
  std::sort(jumps.begin(), jumps.end());
  jumps.erase(std::unique(jumps.begin(), jumps.end()), jumps.end());

  TierB tb;
  std::vector<KMat> lines(d);
  for (long tau = 0; tau < d; ++tau) {
    KMat ntau = tau_space_basis(skel, tau);
    KMat mix = random_invertible(rng, sk.base, n);
    lines[tau] = k_mul(sk.base, mix, ntau);
  }
  for (long jv : jumps) {
    std::vector<KMat> per_tau;
    for (long tau = 0; tau < d; ++tau) {
      KMat rows;
      for (long i = 0; i < n; ++i)
        if (line_jumps[tau][i] >= jv) rows.push_back(lines[tau][i]);
      per_tau.push_back(std::move(rows));
    }
    tb.jumps.push_back(jv);
    tb.fil.push_back(std::move(per_tau));
  }
  return make_tier_b_split(std::move(sk.isoc), std::move(sk.coeff), std::move(sk.pi_op),
                           std::move(sk.base), std::move(sk.pi_roots), std::move(tb));
}

Skeleton random_skeleton(Rng& rng, const GenOptions& opts, long exp_lo, long exp_hi) {
  long p = opts.p;
  long shape_max = opts.max_d >= 4 ? 3 : (opts.max_d >= 2 ? 2 : 0);
  long shape = rng.range(0, shape_max);
  switch (shape) {
    case 1: {
      long n = rng.range(1, std::min<long>(opts.max_n, 4));
      return skeleton_unramified(rng, p, n, exp_lo, exp_hi);
    }
    case 2: {
      long n = rng.range(1, std::min<long>(opts.max_n, 4));
      return skeleton_ramified(rng, p, n, exp_lo, exp_hi);
    }
    case 3: {
      long n = rng.range(1, std::min<long>(opts.max_n, 3));
      return skeleton_d4(rng, p, n, exp_lo, exp_hi);
    }
    default: {
      long n = rng.range(1, opts.max_n);
      return skeleton_plain(rng, p, n, exp_lo, exp_hi);
    }
  }
}

}  // namespace

FilteredIsocrystalCx project_to_tier_a(const FilteredIsocrystalCx& obj) {
  std::map<std::vector<long>, std::vector<GradedProfile>> table;
  for (const auto& s : enumerate_standard_subobjects(obj)) {
    if (s.slots.empty() || static_cast<long>(s.slots.size()) == obj.height()) continue;
    table[s.slots] = s.profiles;
  }
  return make_tier_a(obj.isoc, obj.coeff, obj.pi_op, hodge_profiles(obj), std::move(table));
}

FilteredIsocrystalCx random_wa_instance(Rng& rng, const GenOptions& opts) {
  for (int attempt = 0; attempt < 400; ++attempt) {
    Skeleton sk = random_skeleton(rng, opts, -2, 1);
    FilteredIsocrystalCx obj;
    try {
      obj = attach_filtration(rng, std::move(sk), -2, 1);
    } catch (const DomainError&) {
      continue;
    }
    if (!is_weakly_admissible(obj).wa()) continue;
    if (rng.coin()) return project_to_tier_a(obj);
    return obj;
  }
  throw DomainError("failed to sample a weakly admissible instance");
}

std::pair<FilteredIsocrystalCx, Point> random_reducible_instance(Rng& rng,
                                                                 const GenOptions& opts) {
  for (int attempt = 0; attempt < 400; ++attempt) {
    // two weakly admissible halves over the same coefficient shape, with the
    // first one's slopes and jumps strictly before the second one's
    long p = opts.p;
    long shape = opts.max_d >= 2 ? rng.range(0, 2) : 0;
    long n1 = rng.range(1, 3), n2 = rng.range(1, 3);
    Skeleton a, b;
    switch (shape) {
      case 1:
        a = skeleton_unramified(rng, p, n1, -2, -1);
        b = skeleton_unramified(rng, p, n2, 0, 1);
        break;
      case 2:
        a = skeleton_ramified(rng, p, n1, -2, -2);  // block sums -4..-3: slopes <= -3/2
        b = skeleton_ramified(rng, p, n2, 0, 1);
        break;
      default:
        a = skeleton_plain(rng, p, n1, -2, -1);
        b = skeleton_plain(rng, p, n2, 0, 1);
        a.base = EisensteinExt(p, {Rational(-p), 1});
        b.base = a.base;
        break;
    }
    FilteredIsocrystalCx oa, ob;
    try {
      oa = attach_filtration(rng, a, -2, -1);
      ob = attach_filtration(rng, b, 0, 1);
    } catch (const DomainError&) {
      continue;
    }
    if (!is_weakly_admissible(oa).wa() || !is_weakly_admissible(ob).wa()) continue;
    // check the slope gap: max slope of a strictly below min slope of b
    auto sa = slope_decomposition(oa.isoc);
    auto sb = slope_decomposition(ob.isoc);
    if (!(sa.back().slope < sb.front().slope)) continue;

    // glue: direct sum of the isocrystals, operators, and per-tau bases
    StandardIsocrystal iso = direct_sum(oa.isoc, ob.isoc);
    std::optional<MonomialOperator> op;
    if (oa.pi_op) {
      MonomialOperator m = *oa.pi_op;
      long off = oa.height();
      for (long v : ob.pi_op->perm) m.perm.push_back(v + off);
      m.exponents.insert(m.exponents.end(), ob.pi_op->exponents.begin(),
                         ob.pi_op->exponents.end());
      m.units.insert(m.units.end(), ob.pi_op->units.begin(), ob.pi_op->units.end());
      op = m;
    }
    const TierB& ta = std::get<TierB>(oa.filtration);
    const TierB& tbb = std::get<TierB>(ob.filtration);
    std::vector<long> jumps;
    for (long j : ta.jumps) jumps.push_back(j);
    for (long j : tbb.jumps) jumps.push_back(j);
    std::sort(jumps.begin(), jumps.end());
    jumps.erase(std::unique(jumps.begin(), jumps.end()), jumps.end());
    long ha = oa.height(), hb = ob.height();
    auto embed = [&](const KMat& rows, long off, long width) {
      KMat out;
      for (const auto& r : rows) {
        KVec v(ha + hb, oa.base.zero());
        for (long c = 0; c < width; ++c) v[off + c] = r[c];
        out.push_back(std::move(v));
      }
      return out;
    };
    auto step_of = [&](const TierB& t, long jv, long tau) {
      KMat best;  // lowest stored jump >= jv; empty when beyond the last
      for (std::size_t k = 0; k < t.jumps.size(); ++k)
        if (t.jumps[k] >= jv) return t.fil[k][tau];
      return best;
    };
    TierB glued;
    for (long jv : jumps) {
      std::vector<KMat> per_tau;
      for (long tau = 0; tau < oa.coeff.d; ++tau) {
        KMat rows = embed(step_of(ta, jv, tau), 0, ha);
        for (auto& r : embed(step_of(tbb, jv, tau), ha, hb)) rows.push_back(std::move(r));
        per_tau.push_back(std::move(rows));
      }
      glued.jumps.push_back(jv);
      glued.fil.push_back(std::move(per_tau));
    }
    FilteredIsocrystalCx obj;
    try {
      obj = make_tier_b_split(std::move(iso), oa.coeff, std::move(op), oa.base, oa.pi_roots,
                              std::move(glued));
    } catch (const DomainError&) {
      continue;
    }
    if (!is_weakly_admissible(obj).wa()) continue;
    Point z{Rational(oa.height()) / Rational(oa.coeff.d),
            Rational(-t_N(oa)) / Rational(oa.coeff.d)};
    ConcavePolygon newt = newt_cx(obj);
    ConcavePolygon hdg = hodge_cx(obj);
    if (!newt.is_break_point(z) || !hdg.lies_on(z)) continue;
    if (rng.coin()) return {project_to_tier_a(obj), z};
    return {obj, z};
  }
  throw DomainError("failed to sample a reducible instance");
}

std::pair<FilteredIsocrystalCx, Point> random_polarised_instance(Rng& rng,
                                                                 const GenOptions& opts) {
  for (int attempt = 0; attempt < 400; ++attempt) {
    long p = opts.p;
    bool ramified = opts.max_d >= 2 && rng.coin();
    long a = rng.range(1, 2);    // multiplicative-type height per side (times d)
    long mid = 2 * rng.range(1, 2);  // middle height, slope 1/2, even
    Skeleton sk;
    long h, d;
    if (ramified) {
      d = 2;
      h = 2 * (2 * a + mid);
      sk.isoc.p = p;
      sk.isoc.f = 1;
      // blocks: a blocks of type A slope -1, mid blocks of slope -1/2,
      // a blocks of type A slope 0
      long nblocks = 2 * a + mid;
      sk.isoc.perm.assign(h, 0);
      sk.isoc.exponents.assign(h, 0);
      sk.isoc.units.assign(h, Rational(1));
      MonomialOperator op;
      op.perm.assign(h, 0);
      op.exponents.assign(h, 0);
      op.units.assign(h, Rational(1));
      for (long s = 0; s < nblocks; ++s) {
        long u = 2 * s, w = 2 * s + 1;
        op.perm[u] = w;
        op.perm[w] = u;
        op.exponents[w] = 1;
        if (s < a) {  // slope -1: type A with alpha = -1
          sk.isoc.perm[u] = u;
          sk.isoc.perm[w] = w;
          sk.isoc.exponents[u] = -1;
          sk.isoc.exponents[w] = -1;
        } else if (s < a + mid) {  // slope -1/2: type B with alpha = -1
          sk.isoc.perm[u] = w;
          sk.isoc.perm[w] = u;
          sk.isoc.exponents[u] = -1;
          sk.isoc.exponents[w] = 0;
        } else {  // slope 0: type A with alpha = 0
          sk.isoc.perm[u] = u;
          sk.isoc.perm[w] = w;
        }
      }
      sk.pi_op = op;
      sk.coeff = CoefficientField{2, 2, 1, {Rational(-p), 0, 1}, std::nullopt};
      sk.base = EisensteinExt(p, {Rational(-p), 0, 1});
      EisElem rt = sk.base.uniformizer();
      sk.pi_roots = {rt, sk.base.neg(rt)};
    } else {
      d = 1;
      h = 2 * a + mid;
      sk.isoc.p = p;
      sk.isoc.f = 1;
      sk.isoc.perm.assign(h, 0);
      sk.isoc.exponents.assign(h, 0);
      sk.isoc.units.assign(h, Rational(1));
      for (long j = 0; j < a; ++j) {
        sk.isoc.perm[j] = j;
        sk.isoc.exponents[j] = -1;
      }
      for (long j = 0; j < mid; j += 2) {  // 2-cycles of slope -1/2
        sk.isoc.perm[a + j] = a + j + 1;
        sk.isoc.perm[a + j + 1] = a + j;
        sk.isoc.exponents[a + j] = -1;
      }
      for (long j = 0; j < a; ++j) sk.isoc.perm[a + mid + j] = a + mid + j;
      sk.coeff = CoefficientField::trivial(p);
      sk.base = EisensteinExt(p, {Rational(-p), 1});
    }
    // lines: the slope -1 part at jump -1, the slope 0 part at jump 0, the
    // middle half/half per tau
    FilteredIsocrystalCx skel;
    skel.isoc = sk.isoc;
    skel.coeff = sk.coeff;
    skel.pi_op = sk.pi_op;
    skel.base = sk.base;
    if (sk.pi_roots.empty()) sk.pi_roots.push_back(sk.base.from_rational(Rational(p)));
    skel.pi_roots = sk.pi_roots;
    long n = h / d;
    skel.filtration = TierA{std::vector<GradedProfile>(d, GradedProfile::trivial(n)), {}};
    skel.validate();

    TierB tb;
    tb.jumps = {-1, 0};
    std::vector<KMat> low(d), all(d);
    for (long tau = 0; tau < d; ++tau) {
      KMat ntau = tau_space_basis(skel, tau);
      // per eigen-line: multiplicative part at jump -1, etale part at jump 0,
      // middle lines split half and half
      KMat fil0;
      long mid_taken = 0;
      for (long i = 0; i < n; ++i) {
        // identify the block of the i-th basis row by its support
        long support = -1;
        for (long c = 0; c < h; ++c)
          if (!sk.base.is_zero(ntau[i][c])) {
            support = c;
            break;
          }
        long part;  // 0 = mult, 1 = middle, 2 = etale
        if (ramified) {
          long s = support / 2;
          part = s < a ? 0 : (s < a + mid ? 1 : 2);
        } else {
          part = support < a ? 0 : (support < a + mid ? 1 : 2);
        }
        if (part == 2) fil0.push_back(ntau[i]);
        if (part == 1 && (mid_taken++ % 2 == 0)) fil0.push_back(ntau[i]);
      }
      all[tau] = ntau;
      low[tau] = std::move(fil0);
    }
    tb.fil.push_back(all);
    tb.fil.push_back(low);
    FilteredIsocrystalCx obj;
    try {
      obj = make_tier_b_split(std::move(sk.isoc), sk.coeff, std::move(sk.pi_op), sk.base,
                              sk.pi_roots, std::move(tb));
    } catch (const DomainError&) {
      continue;
    }
    if (!is_weakly_admissible(obj).wa()) continue;
    ConcavePolygon newt = newt_cx(obj);
    ConcavePolygon hdg = hodge_cx(obj);
    ConcavePolygon hn = hn_polygon_cx(obj);
    if (!is_symmetric(newt) || !is_symmetric(hdg) || !is_symmetric(hn)) continue;
    Point z{Rational(a), Rational(a)};
    if (!newt.is_break_point(z) || !hdg.lies_on(z)) continue;
    return {obj, z};
  }
  throw DomainError("failed to sample a polarised reducible instance");
}

std::pair<TorsionProfile, Point> random_torsion_profile(Rng& rng, long depth) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    TorsionProfile pr;
    pr.d = rng.range(1, 2);
    pr.e = pr.d;
    pr.n = rng.range(3, 6);
    // limit slopes from (1/d)Z within [0, 1], strictly decreasing runs
    std::vector<std::pair<Rational, Rational>> runs;
    long den = pr.d;
    std::vector<long> values;
    for (long v = den; v >= 0; --v) values.push_back(v);  // slopes v/den
    long seg = rng.range(2, std::min<long>(3, static_cast<long>(values.size())));
    // choose seg distinct slope values descending
    std::vector<long> chosen;
    long start = rng.range(0, static_cast<long>(values.size()) - seg);
    for (long k = 0; k < seg; ++k) chosen.push_back(values[start + k]);
    std::vector<long> widths(seg, 1);
    long rest = pr.n - seg;
    while (rest > 0) {
      ++widths[rng.range(0, seg - 1)];
      --rest;
    }
    for (long k = 0; k < seg; ++k)
      runs.emplace_back(Rational(chosen[k], den), Rational(widths[k]));
    pr.hn_limit = ConcavePolygon::from_slopes(runs);
    // designated break point: end of a random interior segment
    long brk = rng.range(1, seg - 1);
    long x = 0;
    for (long k = 0; k < brk; ++k) x += widths[k];
    Point z{Rational(x), pr.hn_limit.eval(Rational(x))};
    Rational mu = pr.hn_limit.slope_before(z.x);
    Rational end = pr.hn_limit.end_value();
    long kappa = rng.range(0, 1);
    if (mu.is_zero()) kappa = 0;
    // guard: the lifted point must stay weakly below the end value line
    if (kappa > 0) {
      Rational xi = z.x + Rational(kappa, pr.d);
      if (!(xi < Rational(pr.n)) || end < z.y + mu * Rational(kappa, pr.d)) kappa = 0;
    }
    bool ok = true;
    for (long i = 1; i <= depth && ok; ++i) {
      Rational xi = z.x + Rational(kappa, i * pr.d);
      Rational yi = z.y + mu * Rational(kappa, i * pr.d);
      std::vector<Point> pts = pr.hn_limit.vertices();
      pts.push_back({xi, yi});
      ConcavePolygon ri;
      try {
        ri = concave_envelope(pts);
      } catch (const DomainError&) {
        ok = false;
        break;
      }
      // unrescale to [0, i n]
      std::vector<Point> verts;
      for (const auto& v : ri.vertices()) verts.push_back({v.x * Rational(i), v.y * Rational(i)});
      pr.levels[i] = ConcavePolygon::from_vertices(verts);
    }
    if (!ok) continue;
    if (!check_prop_2_8(pr).ok) continue;
    if (!pr.levels.at(1).lies_on(z)) continue;
    return {pr, z};
  }
  throw DomainError("failed to sample a torsion profile");
}

ConcavePolygon random_polygon(Rng& rng, long max_segments) {
  long segs = rng.range(0, max_segments);
  std::vector<std::pair<Rational, Rational>> runs;
  Rational slope = Rational(rng.range(-4, 8), rng.range(1, 4));
  for (long s = 0; s < segs; ++s) {
    Rational width = Rational(rng.range(1, 5), rng.range(1, 3));
    runs.emplace_back(slope, width);
    slope -= Rational(rng.range(1, 6), rng.range(1, 4));
  }
  return ConcavePolygon::from_slopes(runs);
}

}  // namespace isopoly
