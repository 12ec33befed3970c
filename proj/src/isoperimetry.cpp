#include "isoperf/isoperimetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

namespace isoperf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::int64_t kNoValue = std::numeric_limits<std::int64_t>::max();

// a/b >= f with b > 0, exact
bool ratio_at_least(std::int64_t a, std::int64_t b, const Fraction& f) {
  return static_cast<__int128>(a) * f.den >= static_cast<__int128>(f.num) * b;
}

Fraction rational_of(double n) {
  if (n == std::floor(n) && std::abs(n) < 9e15)
    return {static_cast<std::int64_t>(n), 1};
  if (2 * n == std::floor(2 * n) && std::abs(n) < 4e15)
    return {static_cast<std::int64_t>(2 * n), 2};
  const std::int64_t den = 1 << 20;
  return {static_cast<std::int64_t>(std::llround(n * den)), den};
}

}  // namespace

// ------------------------------------------------------------- BoundReport

std::optional<Fraction> lambda_bound_rational(const GrowthTable& table,
                                              std::int64_t lambda_num,
                                              std::int64_t lambda_den, std::int64_t t) {
  InverseGrowth phi = inverse_growth_rational(table, lambda_num * t, lambda_den);
  if (phi.status == InverseGrowth::Status::NeedsLargerRadius) return std::nullopt;
  if (phi.is_infinite()) return Fraction{0, 1};
  if (phi.n == 0) return std::nullopt;  // lambda t <= 1: nothing to bound
  return Fraction{lambda_num - lambda_den, lambda_num * phi.n};
}

BoundReport bound_report(const GrowthTable& table, std::size_t generating_set_size,
                         double t, const std::vector<double>& lambdas) {
  if (!(t > 0)) throw std::invalid_argument("bound_report: t must be > 0");
  BoundReport rep;
  rep.t = t;
  TransformResult u = u_discrete(table, t);
  TransformResult s = strong_lower_bound(table, t);
  rep.u_discrete = u.value;
  rep.strong = s.value;
  rep.folner_floor = u.value > 0 ? 1.0 / u.value : kInf;

  auto lambda_entry = [&](double lambda) -> std::optional<double> {
    InverseGrowth phi = inverse_growth(table, lambda * t);
    if (phi.status == InverseGrowth::Status::NeedsLargerRadius) return std::nullopt;
    if (phi.is_infinite()) return 0.0;
    if (phi.n == 0) return std::nullopt;
    return (1.0 - 1.0 / lambda) / phi.n;
  };

  if (auto g = lambda_entry(2.0)) {
    rep.gromov = *g;
    rep.csc = *g / (2.0 * static_cast<double>(generating_set_size));
  } else {
    rep.valid = false;
  }
  for (double lambda : lambdas) {
    if (auto v = lambda_entry(lambda))
      rep.lambda_bounds[lambda] = *v;
    else
      rep.valid = false;
  }
  return rep;
}

// ---------------------------------------------------- finite group as graph

namespace {

struct FiniteGraph {
  Group group;
  int n = 0;
  std::vector<Element> elements;            // sorted by (norm, code)
  std::vector<std::vector<int>> adj;        // left-mult neighbors, sorted
  std::vector<std::vector<int>> gen_image;  // per generator s: i -> index(s * x_i)
};

FiniteGraph finite_graph(const Group& group, std::int64_t element_cap = 1 << 22) {
  if (!group.is_finite())
    throw std::invalid_argument("operation requires a finite group");
  GrowthTable t = growth_table(group, 512, element_cap);
  if (!t.saturated()) throw ResourceError("finite group did not saturate", t.radius());
  FiniteGraph fg{group, static_cast<int>(t.elements().size()), t.elements(), {}, {}};
  std::unordered_map<Element, int, ElementHash> index;
  for (int i = 0; i < fg.n; ++i) index.emplace(fg.elements[i], i);
  const auto& gens = group.generators().elements;
  fg.adj.resize(fg.n);
  fg.gen_image.assign(gens.size(), std::vector<int>(fg.n));
  for (int i = 0; i < fg.n; ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      int j = index.at(group.multiply(gens[s], fg.elements[i]));
      fg.adj[i].push_back(j);
      fg.gen_image[s][i] = j;
    }
    std::sort(fg.adj[i].begin(), fg.adj[i].end());
  }
  return fg;
}

// Full-subset sweep statistics for a small finite group (N <= 24).
struct SweepResult {
  int n = 0;
  std::vector<std::int64_t> min_inner;     // by size, kNoValue when unseen
  std::vector<std::uint32_t> inner_witness;
  std::vector<std::int64_t> min_symdiff;   // min over |D|=m of max_s |s^-1 D xor D|
  std::vector<std::uint32_t> symdiff_witness;
};

SweepResult exhaustive_sweep(const FiniteGraph& fg, bool with_symdiff) {
  if (fg.n > 24) throw ResourceError("exhaustive sweep limited to 24 elements", fg.n);
  SweepResult out;
  out.n = fg.n;
  out.min_inner.assign(fg.n + 1, kNoValue);
  out.inner_witness.assign(fg.n + 1, 0);
  out.min_symdiff.assign(fg.n + 1, kNoValue);
  out.symdiff_witness.assign(fg.n + 1, 0);

  std::vector<std::uint32_t> nbr(fg.n, 0);
  for (int i = 0; i < fg.n; ++i)
    for (int j : fg.adj[i]) nbr[i] |= 1u << j;
  // preimage[s][i] = x with gens[s] * x = x_i
  std::vector<std::vector<int>> pre(fg.gen_image.size(), std::vector<int>(fg.n));
  for (std::size_t s = 0; s < fg.gen_image.size(); ++s)
    for (int i = 0; i < fg.n; ++i) pre[s][fg.gen_image[s][i]] = i;

  const std::uint32_t full = fg.n == 32 ? 0xffffffffu : (1u << fg.n) - 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    int size = __builtin_popcount(mask);
    std::int64_t inner = 0;
    for (std::uint32_t m = mask; m;) {
      int i = __builtin_ctz(m);
      m &= m - 1;
      if (nbr[i] & ~mask) ++inner;
    }
    if (inner < out.min_inner[size]) {
      out.min_inner[size] = inner;
      out.inner_witness[size] = mask;
    }
    if (with_symdiff) {
      std::int64_t worst = 0;
      for (const auto& img : fg.gen_image) {
        std::int64_t moved = 0;  // |{x in D : s x not in D}|; symdiff is twice this
        for (std::uint32_t m = mask; m;) {
          int i = __builtin_ctz(m);
          m &= m - 1;
          if (!(mask >> img[i] & 1u)) ++moved;
        }
        worst = std::max(worst, 2 * moved);
      }
      if (worst < out.min_symdiff[size]) {
        out.min_symdiff[size] = worst;
        out.symdiff_witness[size] = mask;
      }
    }
  }
  return out;
}

FiniteSubset subset_of_mask(const FiniteGraph& fg, std::uint32_t mask) {
  std::vector<Element> members;
  for (std::uint32_t m = mask; m;) {
    int i = __builtin_ctz(m);
    m &= m - 1;
    members.push_back(fg.elements[i]);
  }
  return FiniteSubset(fg.group, std::move(members));
}

}  // namespace

// ---------------------------------------------------------------- verify

namespace {

struct BoundCache {
  const GrowthTable& table;
  std::map<std::int64_t, std::pair<Fraction, Fraction>> by_size;  // (u, strong)

  const std::pair<Fraction, Fraction>& at(std::int64_t size) {
    auto it = by_size.find(size);
    if (it == by_size.end()) {
      Fraction u = u_discrete_rational(table, size, 1).bound;
      Fraction s = strong_lower_bound_rational(table, size, 1).bound;
      it = by_size.emplace(size, std::make_pair(u, s)).first;
    }
    return it->second;
  }
};

void check_subset(const std::vector<Element::Code>& codes, std::int64_t size,
                  std::int64_t inner, std::int64_t outer,
                  const std::pair<Fraction, Fraction>& bounds,
                  std::vector<Violation>& out) {
  const auto& [u, strong] = bounds;
  if (!ratio_at_least(inner, size, u))
    out.push_back({"inner_u", codes, static_cast<double>(inner) / size, u.value()});
  if (!ratio_at_least(outer, size, u))
    out.push_back({"outer_u", codes, static_cast<double>(outer) / size, u.value()});
  if (!ratio_at_least(inner, size, strong))
    out.push_back(
        {"inner_strong", codes, static_cast<double>(inner) / size, strong.value()});
}

std::vector<Element::Code> codes_of(const FiniteSubset& d) {
  std::vector<Element::Code> codes;
  codes.reserve(d.size());
  for (const Element& x : d.members()) codes.push_back(x.code());
  return codes;
}

template <typename Body>
void parallel_chunks(std::int64_t total, int threads, Body body) {
  threads = std::max(1, std::min({threads, 64, static_cast<int>(total ? total : 1)}));
  if (threads == 1) {
    body(0, 0, total);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    std::int64_t lo = total * w / threads, hi = total * (w + 1) / threads;
    pool.emplace_back([=] { body(w, lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

VerifyReport verify_main_inequality(const Group& group, const FamilySpec& family,
                                    int table_radius, int threads) {
  GrowthTable table = growth_table(group, table_radius);
  VerifyReport rep;
  const int nthreads = std::max(1, threads);
  std::vector<std::vector<Violation>> local(64);

  if (family.kind == FamilySpec::Kind::AllSubsets) {
    FiniteGraph fg = finite_graph(group);
    if (fg.n > 24)
      throw ResourceError("AllSubsets family limited to 24 elements", fg.n);
    std::vector<std::uint32_t> nbr(fg.n, 0);
    for (int i = 0; i < fg.n; ++i)
      for (int j : fg.adj[i]) nbr[i] |= 1u << j;
    const std::int64_t full = (std::int64_t{1} << fg.n) - 1;
    rep.subsets_checked = full;
    parallel_chunks(full, nthreads, [&](int w, std::int64_t lo, std::int64_t hi) {
      BoundCache cache{table, {}};
      for (std::int64_t v = lo; v < hi; ++v) {
        std::uint32_t mask = static_cast<std::uint32_t>(v + 1);
        int size = __builtin_popcount(mask);
        std::int64_t inner = 0;
        std::uint32_t outer_mask = 0;
        for (std::uint32_t m = mask; m;) {
          int i = __builtin_ctz(m);
          m &= m - 1;
          std::uint32_t out_nbrs = nbr[i] & ~mask;
          if (out_nbrs) ++inner;
          outer_mask |= out_nbrs;
        }
        std::int64_t outer = __builtin_popcount(outer_mask);
        const auto& bounds = cache.at(size);
        if (!ratio_at_least(inner, size, bounds.first) ||
            !ratio_at_least(outer, size, bounds.first) ||
            !ratio_at_least(inner, size, bounds.second))
          check_subset(codes_of(subset_of_mask(fg, mask)), size, inner, outer, bounds,
                       local[w]);
      }
    });
  } else if (family.kind == FamilySpec::Kind::Connected) {
    BallGraph ball(group, family.max_size - 1);
    std::vector<std::vector<int>> subsets;
    ball.enumerate_connected(family.max_size, [&](std::span<const int> idx) {
      subsets.emplace_back(idx.begin(), idx.end());
    });
    rep.subsets_checked = static_cast<std::int64_t>(subsets.size());
    parallel_chunks(rep.subsets_checked, nthreads,
                    [&](int w, std::int64_t lo, std::int64_t hi) {
                      BoundCache cache{table, {}};
                      for (std::int64_t i = lo; i < hi; ++i) {
                        BallGraph::Stats st = ball.stats(subsets[i]);
                        const auto& bounds = cache.at(st.size);
                        if (!ratio_at_least(st.inner, st.size, bounds.first) ||
                            !ratio_at_least(st.outer, st.size, bounds.first) ||
                            !ratio_at_least(st.inner, st.size, bounds.second))
                          check_subset(codes_of(ball.to_subset(subsets[i])), st.size,
                                       st.inner, st.outer, bounds, local[w]);
                      }
                    });
  } else {
    rep.subsets_checked = family.count;
    parallel_chunks(family.count, nthreads, [&](int w, std::int64_t lo, std::int64_t hi) {
      BoundCache cache{table, {}};
      for (std::int64_t i = lo; i < hi; ++i) {
        int size = 1 + static_cast<int>(i % family.max_size);
        FiniteSubset d =
            random_connected_subset(group, size, family.seed + static_cast<std::uint64_t>(i));
        BoundaryData b = boundary_data(d);
        check_subset(codes_of(d), static_cast<std::int64_t>(d.size()),
                     static_cast<std::int64_t>(b.inner.size()),
                     static_cast<std::int64_t>(b.outer.size()), cache.at(d.size()),
                     local[w]);
      }
    });
  }

  for (auto& v : local)
    rep.violations.insert(rep.violations.end(), std::make_move_iterator(v.begin()),
                          std::make_move_iterator(v.end()));
  std::sort(rep.violations.begin(), rep.violations.end(),
            [](const Violation& a, const Violation& b) {
              if (a.check != b.check) return a.check < b.check;
              return a.subset < b.subset;
            });
  return rep;
}

// ----------------------------------------------------------------- profile

std::vector<ProfilePoint> connected_profile(const Group& group, int m_max,
                                            int radius_cap) {
  if (m_max < 1) throw std::invalid_argument("connected_profile: m_max must be >= 1");
  if (radius_cap < m_max - 1)
    throw std::invalid_argument("connected_profile: radius_cap must be >= m_max - 1");
  BallGraph ball(group, radius_cap);
  std::vector<std::int64_t> best(m_max + 1, kNoValue);
  std::vector<std::vector<int>> witness(m_max + 1);
  ball.enumerate_connected(m_max, [&](std::span<const int> idx) {
    BallGraph::Stats st = ball.stats(idx);
    if (st.inner < best[st.size]) {
      best[st.size] = st.inner;
      witness[st.size].assign(idx.begin(), idx.end());
    }
  });
  std::vector<ProfilePoint> out;
  for (int m = 1; m <= m_max; ++m) {
    if (best[m] == kNoValue) break;  // group exhausted below m_max
    out.push_back(ProfilePoint{m, best[m], ball.to_subset(witness[m]),
                               ProfilePoint::Scope::ExactConnectedDp});
  }
  return out;
}

namespace {

// Right-translate the connected pieces far apart along powers of the first
// generator, so component boundaries add; verified, not assumed.
FiniteSubset placed_union(const Group& group, const std::vector<FiniteSubset>& pieces,
                          std::int64_t expected_inner) {
  if (pieces.size() == 1) return pieces[0];
  std::int64_t m = 0;
  for (const auto& p : pieces) m += static_cast<std::int64_t>(p.size());
  const Element g = group.generators().elements[0];
  std::int64_t spacing = 2 * m + 2;
  for (int attempt = 0; attempt < 8; ++attempt, spacing *= 2) {
    std::vector<Element> members;
    Element shift = group.identity();
    Element step = shift;
    for (std::int64_t k = 0; k < spacing; ++k) step = group.multiply(step, g);
    for (const auto& piece : pieces) {
      for (const Element& x : piece.members()) members.push_back(group.multiply(x, shift));
      shift = group.multiply(shift, step);
    }
    FiniteSubset d(group, std::move(members));
    if (static_cast<std::int64_t>(d.size()) != m) continue;  // translates collided
    BoundaryData b = boundary_data(d);
    if (static_cast<std::int64_t>(b.inner.size()) == expected_inner &&
        b.components == static_cast<int>(pieces.size()))
      return d;
  }
  throw std::logic_error("profile: could not realize a non-adjacent placement");
}

}  // namespace

ProfilePoint profile(const Group& group, std::int64_t m, int m_max_hint) {
  if (m < 1) throw std::invalid_argument("profile: m must be >= 1");
  if (group.is_finite()) {
    std::int64_t order = *group.order();
    if (m > order) throw std::invalid_argument("profile: m exceeds the group order");
    if (order <= 20) {
      FiniteGraph fg = finite_graph(group);
      SweepResult sweep = exhaustive_sweep(fg, false);
      return ProfilePoint{m, sweep.min_inner[m],
                          subset_of_mask(fg, sweep.inner_witness[m]),
                          ProfilePoint::Scope::ExactFinite};
    }
    auto conn = connected_profile(group, static_cast<int>(m), static_cast<int>(m) - 1);
    return ProfilePoint{m, conn[m - 1].boundary_min, conn[m - 1].witness,
                        ProfilePoint::Scope::UpperBoundOnly};
  }

  const int m_int = static_cast<int>(m);
  (void)m_max_hint;
  auto conn = connected_profile(group, m_int, m_int - 1 < 0 ? 0 : m_int - 1);
  // components of any subset are pairwise non-adjacent, so boundaries add:
  // minimize over partitions of m into connected pieces
  std::vector<std::int64_t> dp(m_int + 1, kNoValue);
  std::vector<int> last(m_int + 1, 0);
  dp[0] = 0;
  for (int k = 1; k <= m_int; ++k) {
    for (int piece = 1; piece <= k; ++piece) {
      std::int64_t c = conn[piece - 1].boundary_min;
      if (dp[k - piece] == kNoValue) continue;
      if (dp[k - piece] + c < dp[k]) {
        dp[k] = dp[k - piece] + c;
        last[k] = piece;
      }
    }
  }
  std::vector<FiniteSubset> pieces;
  for (int k = m_int; k > 0; k -= last[k]) pieces.push_back(conn[last[k] - 1].witness);
  FiniteSubset witness = placed_union(group, pieces, dp[m_int]);
  return ProfilePoint{m, dp[m_int], std::move(witness),
                      ProfilePoint::Scope::ExactConnectedDp};
}

// ----------------------------------------------------------------- Folner

std::optional<std::int64_t> folner_floor_from_table(const GrowthTable& table, double n,
                                                    bool* certified) {
  Fraction nf = rational_of(n);
  // U(t) <= 1/n  <=>  n * num <= den, exactly when n is rational
  auto small_enough = [&](std::int64_t t) {
    DiscreteBound b = u_discrete_rational(table, t, 1);
    bool ok = static_cast<__int128>(b.bound.num) * nf.num <=
              static_cast<__int128>(b.bound.den) * nf.den;
    if (ok && certified) *certified = b.certified;
    return ok;
  };
  std::int64_t lo = 1, hi = table.gamma(table.radius());
  if (!small_enough(hi)) return std::nullopt;
  if (small_enough(lo)) return lo;
  while (hi - lo > 1) {  // U is non-increasing in t
    std::int64_t mid = lo + (hi - lo) / 2;
    (small_enough(mid) ? hi : lo) = mid;
  }
  small_enough(hi);  // refresh the certified flag for the answer
  return hi;
}

namespace {

struct WitnessSearch {
  std::optional<std::int64_t> best_size;
  std::optional<FiniteSubset> witness;

  void offer(std::int64_t size, const FiniteSubset& d) {
    if (!best_size || size < *best_size) {
      best_size = size;
      witness = d;
    }
  }
};

// ratio predicate |target| * n <= size, exact for rational n
bool folner_ok(std::int64_t boundary, std::int64_t size, const Fraction& n) {
  return static_cast<__int128>(boundary) * n.num <= static_cast<__int128>(size) * n.den;
}

FolnerResult folner_exhaustive(const Group& group, const Fraction& n, bool phi_variant) {
  FiniteGraph fg = finite_graph(group);
  SweepResult sweep = exhaustive_sweep(fg, phi_variant);
  const auto& stat = phi_variant ? sweep.min_symdiff : sweep.min_inner;
  const auto& wit = phi_variant ? sweep.symdiff_witness : sweep.inner_witness;
  for (int m = 1; m <= fg.n; ++m) {
    if (stat[m] == kNoValue) continue;
    if (folner_ok(stat[m], m, n)) {
      FolnerResult res;
      res.status = FolnerResult::Status::Exact;
      res.value = m;
      res.lower = res.value;
      res.upper = res.value;
      res.lower_certified = true;
      res.witness = subset_of_mask(fg, wit[m]);
      return res;
    }
  }
  // a finite group always has the zero-boundary witness D = G
  throw std::logic_error("folner: no witness in a finite group");
}

FolnerResult folner_profile_dp(const Group& group, const Fraction& n,
                               const FolnerOptions& opt) {
  const int m_max = opt.max_size > 0 ? opt.max_size : 10;
  auto conn = connected_profile(group, m_max, m_max - 1);
  std::vector<std::int64_t> dp(m_max + 1, kNoValue);
  std::vector<int> last(m_max + 1, 0);
  dp[0] = 0;
  for (int k = 1; k <= m_max && k <= static_cast<int>(conn.size()); ++k) {
    for (int piece = 1; piece <= k; ++piece) {
      if (dp[k - piece] == kNoValue) continue;
      std::int64_t c = conn[piece - 1].boundary_min;
      if (dp[k - piece] + c < dp[k]) {
        dp[k] = dp[k - piece] + c;
        last[k] = piece;
      }
    }
  }
  for (int m = 1; m <= m_max && m <= static_cast<int>(conn.size()); ++m) {
    if (dp[m] == kNoValue || !folner_ok(dp[m], m, n)) continue;
    std::vector<FiniteSubset> pieces;
    for (int k = m; k > 0; k -= last[k]) pieces.push_back(conn[last[k] - 1].witness);
    FolnerResult res;
    res.status = FolnerResult::Status::Exact;
    res.value = m;
    res.lower = m;
    res.upper = m;
    res.lower_certified = true;
    res.witness = placed_union(group, pieces, dp[m]);
    return res;
  }
  FolnerResult res;
  res.status = FolnerResult::Status::Unresolved;
  res.lower = m_max + 1;  // every size <= m_max was excluded exactly
  return res;
}

FolnerResult folner_bounds(const Group& group, double n, const Fraction& nf,
                           const FolnerOptions& opt, bool phi_variant) {
  GrowthTable table = growth_table(group, opt.table_radius, opt.element_cap);
  FolnerResult res;
  bool certified = false;
  // lower bound from the transform floor; the phi variant transfers through
  // |inner| <= |S| max_s (half the symmetric difference is the moved count)
  double floor_n = phi_variant
                       ? n / static_cast<double>(group.generators().size())
                       : n;
  if (floor_n >= 1) {
    if (auto floor = folner_floor_from_table(table, floor_n, &certified)) {
      res.lower = *floor;
      res.lower_certified = certified;
    } else {
      res.lower = table.gamma(table.radius()) + 1;
      res.lower_certified = false;
    }
  }

  WitnessSearch search;
  auto offer = [&](const FiniteSubset& d) {
    BoundaryData b = boundary_data(d);
    std::int64_t stat;
    if (phi_variant) {
      stat = 0;
      const auto& gens = group.generators().elements;
      for (const Element& s : gens) {
        std::int64_t moved = displacement_count(d, s) +
                             displacement_count(d, group.invert(s));
        stat = std::max(stat, moved);
      }
    } else {
      stat = static_cast<std::int64_t>(b.inner.size());
    }
    if (folner_ok(stat, static_cast<std::int64_t>(d.size()), nf))
      search.offer(static_cast<std::int64_t>(d.size()), d);
  };

  // balls B(r) as candidate witnesses
  for (int r = 0; r + 1 <= table.radius(); ++r) {
    std::vector<Element> members;
    for (std::size_t i = 0; i < table.elements().size() && table.norms()[i] <= r; ++i)
      members.push_back(table.elements()[i]);
    offer(FiniteSubset(group, std::move(members)));
  }
  // seeded random connected subsets
  std::int64_t max_size = opt.max_size > 0 ? opt.max_size : 16;
  if (group.is_finite()) max_size = std::min(max_size, *group.order());
  for (int i = 0; i < 64; ++i) {
    int size = 1 + static_cast<int>((opt.seed + i) % max_size);
    offer(random_connected_subset(group, size, opt.seed + i));
  }

  if (search.best_size) {
    res.upper = search.best_size;
    res.witness = search.witness;
    if (*search.best_size == res.lower && res.lower_certified) {
      res.status = FolnerResult::Status::Exact;
      res.value = res.lower;
    } else {
      res.status = FolnerResult::Status::Bounds;
    }
  } else {
    res.status = FolnerResult::Status::Unresolved;
  }
  return res;
}

FolnerResult folner_impl(const Group& group, double n, const FolnerOptions& opt,
                         bool phi_variant) {
  if (!(n > 0)) throw std::invalid_argument("folner: n must be > 0");
  Fraction nf = rational_of(n);
  FolnerStrategy strategy = opt.strategy;
  if (strategy == FolnerStrategy::Auto) {
    if (group.is_finite() && *group.order() <= 20)
      strategy = FolnerStrategy::Exhaustive;
    else if (!phi_variant && group.kind() == GroupKind::Free && group.spec().rank >= 2 &&
             static_cast<double>(group.spec().rank - 1) * n >=
                 static_cast<double>(group.spec().rank)) {
      // |inner|/|D| > (q-1)/q for every finite D in a free group, so no
      // witness exists once 1/n <= (q-1)/q
      FolnerResult res;
      res.status = FolnerResult::Status::Infinite;
      res.lower_certified = true;
      return res;
    } else {
      strategy = FolnerStrategy::BoundsOnly;
    }
  }
  switch (strategy) {
    case FolnerStrategy::Exhaustive:
      return folner_exhaustive(group, nf, phi_variant);
    case FolnerStrategy::ProfileDp:
      if (phi_variant)
        throw std::invalid_argument("folner_phi: profile DP does not apply");
      return folner_profile_dp(group, nf, opt);
    case FolnerStrategy::BoundsOnly:
      return folner_bounds(group, n, nf, opt, phi_variant);
    case FolnerStrategy::Auto:
      break;
  }
  throw std::logic_error("folner: unreachable");
}

}  // namespace

FolnerResult folner_value(const Group& group, double n, const FolnerOptions& opt) {
  return folner_impl(group, n, opt, false);
}

FolnerResult folner_phi(const Group& group, double n, const FolnerOptions& opt) {
  return folner_impl(group, n, opt, true);
}

// ----------------------------------------------------------------- Cheeger

namespace {

struct EdgeRatio {
  std::int64_t edges = kNoValue;
  std::int64_t size = 1;

  bool better_than(const EdgeRatio& other) const {
    return static_cast<__int128>(edges) * other.size <
           static_cast<__int128>(other.edges) * size;
  }
};

CheegerResult cheeger_exhaustive(const FiniteGraph& fg) {
  std::vector<std::uint32_t> nbr(fg.n, 0);
  for (int i = 0; i < fg.n; ++i)
    for (int j : fg.adj[i]) nbr[i] |= 1u << j;
  EdgeRatio best;
  std::uint32_t best_mask = 1;
  const std::int64_t half = fg.n / 2;
  const std::uint32_t full = (1u << fg.n) - 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::int64_t size = __builtin_popcount(mask);
    if (size > half) continue;
    std::int64_t edges = 0;
    for (std::uint32_t m = mask; m;) {
      int i = __builtin_ctz(m);
      m &= m - 1;
      edges += __builtin_popcount(nbr[i] & ~mask);
    }
    EdgeRatio cand{edges, size};
    if (cand.better_than(best)) {
      best = cand;
      best_mask = mask;
    }
  }
  return CheegerResult{{best.edges, best.size}, subset_of_mask(fg, best_mask)};
}

// DFS include/exclude with the committed-crossing-edge prune.
struct CheegerBnb {
  const FiniteGraph& fg;
  std::int64_t eval_cap;
  std::int64_t half;
  std::int64_t evals = 0;
  EdgeRatio best;
  std::vector<int> best_set, cur;
  std::vector<char> state;  // 0 undecided, 1 in, 2 out

  void rec(int idx, std::int64_t committed_edges) {
    if (++evals > eval_cap)
      throw ResourceError("cheeger: evaluation budget exceeded", evals);
    const std::int64_t size = static_cast<std::int64_t>(cur.size());
    if (size >= 1 && size <= half) {
      std::int64_t edges = 0;
      for (int i : cur)
        for (int j : fg.adj[i])
          if (state[j] != 1) ++edges;
      EdgeRatio cand{edges, size};
      if (cand.better_than(best)) {
        best = cand;
        best_set = cur;
      }
    }
    if (idx >= fg.n || size >= half) return;
    // edges between decided-in and decided-out vertices can never be undone,
    // so the best ratio reachable below this node is >= committed / half
    if (best.edges != kNoValue &&
        static_cast<__int128>(committed_edges) * best.size >
            static_cast<__int128>(best.edges) * half)
      return;
    state[idx] = 1;
    cur.push_back(idx);
    std::int64_t inc = committed_edges;
    for (int j : fg.adj[idx])
      if (j < idx && state[j] == 2) ++inc;
    rec(idx + 1, inc);
    cur.pop_back();
    state[idx] = 2;
    std::int64_t exc = committed_edges;
    for (int j : fg.adj[idx])
      if (j < idx && state[j] == 1) ++exc;
    rec(idx + 1, exc);
    state[idx] = 0;
  }
};

}  // namespace

CheegerResult cheeger(const Group& group, std::int64_t eval_cap) {
  FiniteGraph fg = finite_graph(group);
  if (fg.n == 1)
    throw std::invalid_argument("cheeger: trivial group has no admissible subset");
  if (fg.n <= 24 && (std::int64_t{1} << fg.n) <= 16 * eval_cap)
    return cheeger_exhaustive(fg);
  CheegerBnb bnb{fg, eval_cap, fg.n / 2, 0, {}, {}, {}, std::vector<char>(fg.n, 0)};
  // seed the bound with norm-ordered prefix sets (arcs and balls do well)
  for (int k = 1; k <= fg.n / 2; ++k) {
    std::int64_t edges = 0;
    for (int i = 0; i < k; ++i)
      for (int j : fg.adj[i])
        if (j >= k) ++edges;
    EdgeRatio cand{edges, k};
    if (cand.better_than(bnb.best)) {
      bnb.best = cand;
      bnb.best_set.clear();
      for (int i = 0; i < k; ++i) bnb.best_set.push_back(i);
    }
  }
  bnb.rec(0, 0);
  std::vector<Element> members;
  for (int i : bnb.best_set) members.push_back(fg.elements[i]);
  return CheegerResult{{bnb.best.edges, bnb.best.size},
                       FiniteSubset(group, std::move(members))};
}

// ---------------------------------------------------------------- Laplacian

double laplacian_lambda1(const Group& group) {
  FiniteGraph fg = finite_graph(group);
  const int n = fg.n;
  if (n > 512) throw ResourceError("laplacian_lambda1 limited to 512 elements", n);
  if (n == 1) throw std::invalid_argument("laplacian_lambda1: trivial group");
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    a[i][i] = static_cast<double>(fg.adj[i].size());
    for (int j : fg.adj[i]) a[i][j] -= 1.0;
  }
  // cyclic Jacobi to off-diagonal Frobenius norm <= 1e-10
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (std::sqrt(2 * off) <= 1e-10) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-14) continue;
        double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        double apq = a[p][q];
        a[p][p] -= t * apq;
        a[q][q] += t * apq;
        a[p][q] = a[q][p] = 0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = a[p][k] = c * akp - s * akq;
          a[k][q] = a[q][k] = s * akp + c * akq;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = a[i][i];
  std::sort(eig.begin(), eig.end());
  return eig[1];
}

// --------------------------------------------------- free / abelian checks

FreeIdentityVerdict free_outer_identity_check(int q, const FiniteSubset& d) {
  if (d.group().kind() != GroupKind::Free || d.group().spec().rank != q)
    throw std::invalid_argument("free_outer_identity_check: subset is not in F_q");
  if (d.empty()) throw std::invalid_argument("free_outer_identity_check: empty subset");
  BoundaryData b = boundary_data(d);
  FreeIdentityVerdict v;
  v.components = b.components;
  v.connected = b.components == 1;
  v.inner = static_cast<std::int64_t>(b.inner.size());
  v.outer = static_cast<std::int64_t>(b.outer.size());
  const std::int64_t size = static_cast<std::int64_t>(d.size());
  v.outer_identity_holds =
      !v.connected || v.outer == (2 * q - 2) * size + 2;
  v.inner_bound_holds = q * v.inner >= (q - 1) * size + b.components;
  return v;
}

LoomisWhitneyVerdict loomis_whitney_check(const FiniteSubset& d) {
  if (d.group().kind() != GroupKind::FreeAbelian)
    throw std::invalid_argument("loomis_whitney_check: subset is not in Z^d");
  if (d.empty()) throw std::invalid_argument("loomis_whitney_check: empty subset");
  const int dim = d.group().spec().rank;
  if (static_cast<std::int64_t>(d.size()) > 1'000'000)
    throw std::invalid_argument("loomis_whitney_check: subset too large");
  LoomisWhitneyVerdict v;
  for (int j = 0; j < dim; ++j) {
    std::set<Element::Code> proj;
    for (const Element& x : d.members()) {
      Element::Code p = x.code();
      p.erase(p.begin() + j);
      proj.insert(std::move(p));
    }
    v.projection_sizes.push_back(static_cast<std::int64_t>(proj.size()));
  }
  BoundaryData b = boundary_data(d);
  v.inner = static_cast<std::int64_t>(b.inner.size());
  const std::int64_t size = static_cast<std::int64_t>(d.size());
  __int128 size_pow = 1, proj_prod = 1, inner_pow = 1;
  for (int j = 0; j < dim - 1; ++j) size_pow *= size;
  for (std::int64_t p : v.projection_sizes) proj_prod *= p;
  for (int j = 0; j < dim; ++j) inner_pow *= v.inner;
  v.product_bound_holds = size_pow <= proj_prod;
  v.boundary_bound_holds = inner_pow >= size_pow;
  return v;
}

// ------------------------------------------------- growth-hypothesis bounds

double poly_growth_bound(double C, double d, double t) { return u_poly_closed(C, d, t); }

double exp_growth_bound(double C, double b, double alpha, double t) {
  if (!(C > 0) || !(b > 0) || !(alpha > 0) || !(alpha <= 1) || !(t > 0))
    throw std::invalid_argument("exp_growth_bound: bad parameters");
  double log_lam_t = std::log(alpha) - std::log(C) + 1.0 / alpha + std::log(t);
  if (log_lam_t < 1.0) throw std::domain_error("exp_growth_bound: t too small");
  return std::pow(b / lambert_f_from_log(log_lam_t), 1.0 / alpha);
}

std::vector<double> folner_asymptotic_ratio(const GrowthTable& table,
                                            const GrowthModel& g,
                                            const std::vector<double>& n_list) {
  std::vector<double> out;
  out.reserve(n_list.size());
  for (double n : n_list) {
    auto floor = folner_floor_from_table(table, n);
    if (!floor) {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    out.push_back(g.inverse(static_cast<double>(*floor)) / n);
  }
  return out;
}

}  // namespace isoperf
