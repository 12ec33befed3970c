#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isoperf/subsets.hpp"
#include "isoperf/transform.hpp"

namespace isoperf {

/// Every lower bound on |boundary|/|D| at cardinality t, side by side.
/// Entries whose inverse-growth lookup hits the infinite branch are 0
/// (nothing to bound); entries the table radius cannot resolve are flagged
/// invalid.
struct BoundReport {
  double t = 0;
  double u_discrete = 0;
  double strong = 0;
  double gromov = 0;  // (1/2) / phi(2t)
  double csc = 0;     // 1/(4|S|) / phi(2t)
  std::map<double, double> lambda_bounds;  // lambda -> (1 - 1/lambda)/phi(lambda t)
  /// For every n above this threshold, any set of size <= t has boundary
  /// ratio > 1/n, i.e. the smallest set with ratio <= 1/n is larger than t.
  /// +infinity when u_discrete <= 0 says nothing.
  double folner_floor = 0;
  bool valid = true;  // false when the table radius cannot resolve a lookup
};

BoundReport bound_report(const GrowthTable& table, std::size_t generating_set_size,
                         double t, const std::vector<double>& lambdas = {});

/// (1 - 1/lambda) / phi(lambda t) as an exact fraction for lambda =
/// lambda_num/lambda_den > 1; {0, 1} on the infinite branch; nullopt when the
/// table radius cannot resolve phi (or lambda t <= 1).
std::optional<Fraction> lambda_bound_rational(const GrowthTable& table,
                                              std::int64_t lambda_num,
                                              std::int64_t lambda_den, std::int64_t t);

/// Families of finite subsets the inequality sweeps run over.
struct FamilySpec {
  enum class Kind {
    AllSubsets,       // every nonempty subset of a small finite group
    Connected,        // every connected subset containing e, size <= max_size
    RandomConnected,  // `count` seeded random connected subsets, sizes cycling 1..max_size
  };
  Kind kind = Kind::Connected;
  int max_size = 8;
  int count = 1000;
  std::uint64_t seed = 0;
};

struct Violation {
  std::string check;  // "inner_u" | "outer_u" | "inner_strong"
  std::vector<Element::Code> subset;
  double ratio = 0;
  double bound = 0;
};

struct VerifyReport {
  std::int64_t subsets_checked = 0;
  std::vector<Violation> violations;  // sorted by (check, subset encoding)
};

/// Checks |inner|/|D| >= U(|D|), |outer|/|D| >= U(|D|) and
/// |inner|/|D| >= strong(|D|) for every subset in the family, with exact
/// rational comparisons. Violations are data, not errors.
VerifyReport verify_main_inequality(const Group& group, const FamilySpec& family,
                                    int table_radius = 10, int threads = 1);

struct ProfilePoint {
  enum class Scope { ExactFinite, ExactConnectedDp, UpperBoundOnly };
  std::int64_t m = 0;
  std::int64_t boundary_min = 0;
  FiniteSubset witness;
  Scope scope = Scope::ExactFinite;
};

/// Exact min of |inner boundary| over connected subsets containing e of each
/// size <= m_max. radius_cap must be >= m_max - 1 (completeness).
std::vector<ProfilePoint> connected_profile(const Group& group, int m_max,
                                            int radius_cap);

/// Isoperimetric profile at m. Infinite groups: exact via the partition
/// minimization over connected profiles (component boundaries add, and
/// translates realize any partition). Finite groups up to the exhaustion cap:
/// exact by full subset sweep; beyond: the connected value, an upper bound.
ProfilePoint profile(const Group& group, std::int64_t m, int m_max_hint = 10);

struct FolnerResult {
  enum class Status { Exact, Bounds, Infinite, Unresolved };
  Status status = Status::Unresolved;
  std::int64_t value = 0;              // exact value when Status::Exact
  std::int64_t lower = 1;              // valid lower bound otherwise
  std::optional<std::int64_t> upper;   // best witness size found
  bool lower_certified = false;        // the transform floor was certified
  std::optional<FiniteSubset> witness;
};

enum class FolnerStrategy {
  Auto,        // finite -> exhaustive; free -> certified infinite; else bounds
  Exhaustive,  // finite groups within the cap
  ProfileDp,   // exact via connected profile + partition minimization
  BoundsOnly,  // transform floor + ball/random witnesses
};

struct FolnerOptions {
  FolnerStrategy strategy = FolnerStrategy::Auto;
  int max_size = 0;       // search size for ProfileDp / witness enumeration
  int table_radius = 12;  // growth table radius for the transform floor
  std::uint64_t seed = 0;
  std::int64_t element_cap = 4'000'000;
};

/// Smallest |D| with n |inner(D)| <= |D| (n may be fractional).
FolnerResult folner_value(const Group& group, double n, const FolnerOptions& opt = {});

/// Variant via symmetric differences: smallest |D| with
/// max_s |s^{-1}D xor D| * n <= |D|.
FolnerResult folner_phi(const Group& group, double n, const FolnerOptions& opt = {});

struct CheegerResult {
  Fraction h;  // exact min |E(D)|/|D| over 0 < |D| <= |G|/2
  FiniteSubset witness;
};

/// Exact Cheeger constant of a finite group. Full sweep up to 2^20 subsets;
/// branch and bound with the same evaluation budget beyond that.
CheegerResult cheeger(const Group& group, std::int64_t eval_cap = 1 << 20);

/// Smallest nonzero eigenvalue of the combinatorial Laplacian (the zero
/// eigenvalue on constants is simple since the graph is connected), by
/// cyclic Jacobi rotations to off-diagonal norm <= 1e-10. |G| <= 512.
double laplacian_lambda1(const Group& group);

struct FreeIdentityVerdict {
  bool connected = false;
  int components = 1;
  std::int64_t outer = 0;
  std::int64_t inner = 0;
  bool outer_identity_holds = false;  // connected D: |outer| == (2q-2)|D| + 2
  bool inner_bound_holds = false;     // q|inner| >= (q-1)|D| + m, always
};

/// Tree identities for subsets of the free group on q generators.
FreeIdentityVerdict free_outer_identity_check(int q, const FiniteSubset& d);

struct LoomisWhitneyVerdict {
  std::vector<std::int64_t> projection_sizes;
  std::int64_t inner = 0;
  bool product_bound_holds = false;   // |D|^{d-1} <= prod |pi_j(D)|
  bool boundary_bound_holds = false;  // |inner|^d >= |D|^{d-1}
};

/// Coordinate-deletion projection bounds for subsets of Z^d.
LoomisWhitneyVerdict loomis_whitney_check(const FiniteSubset& d);

/// (C^{1/d} d / (d+1)^{1+1/d}) t^{-1/d}, valid when gamma(n-1) >= C n^d.
double poly_growth_bound(double C, double d, double t);
/// (b / f(lam t))^{1/alpha}, valid when gamma(n-1) >= C exp(b n^alpha).
double exp_growth_bound(double C, double b, double alpha, double t);

/// Diagnostic sequence g^{-1}(folner_floor(n)) / n where folner_floor(n) is
/// the least integer t with U_gamma(t) <= 1/n. Data only, no verdict.
std::vector<double> folner_asymptotic_ratio(const GrowthTable& table,
                                            const GrowthModel& g,
                                            const std::vector<double>& n_list);

/// Least integer t >= 1 with U_gamma(t) <= 1/n, by monotone bisection.
/// nullopt when even t = gamma(R) leaves the transform above 1/n.
std::optional<std::int64_t> folner_floor_from_table(const GrowthTable& table, double n,
                                                    bool* certified = nullptr);

}  // namespace isoperf
