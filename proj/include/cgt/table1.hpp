#pragma once
// Scenario registry for the normalizer-factorization case catalogue: one
// entry per catalogued line plus the minus-2-subspace special case.  Each
// scenario knows its parameter side conditions, how to build the acting
// group and the two designated elements, which verification strategy is
// feasible (exhaustive normalizer computation, explicit witness subgroups,
// or order-consistency checks only), and whether the companion
// centralizer factorization is expected to hold.

#include <cstdint>
#include <string>
#include <vector>

#include "cgt/grpgen.hpp"
#include "cgt/normfact.hpp"

namespace cgt {

enum class Feasibility { exhaustive, witness, order_consistency_only };
std::string to_string(Feasibility f);

struct ScenarioLine {
  std::string id;           // "1".."14", "sec2-q4", "sec2-q16"
  std::string group_shape;  // human-readable group description
  std::string x_desc, y_desc;
  std::string side_conditions;
  bool centralizer_sqrt = false;  // companion centralizer factorization expected
  Feasibility feasibility = Feasibility::exhaustive;
  std::vector<std::pair<int, int>> default_params;  // (n, q) acceptance set
};

const std::vector<ScenarioLine>& scenario_table();
const ScenarioLine& scenario(const std::string& id);  // throws on unknown id

// Empty when (n, q) is admissible for the line; otherwise the violated
// clauses, one human-readable string each.
std::vector<std::string> side_condition_failures(const std::string& id, int n, int q);

struct LineResult {
  std::string id;
  int n = 0, q = 0;
  Big order_G = 0;
  FactorizationReport normalizer_report;
  FactorizationReport centralizer_report;
  bool has_centralizer_report = false;
  std::vector<std::string> notes;  // verified structural facts, free-form
  std::string to_json() const;
};

// Builds the scenario at (n, q), runs the normalizer factorization test and
// (when feasible) the centralizer factorization test.  Throws
// std::invalid_argument when side conditions fail, listing the clauses.
// For feasibility class order-consistency-only, both verdicts are
// inconclusive and the notes carry the validated element conditions.
LineResult verify_line(const std::string& id, int n, int q, uint64_t seed = 1);

struct Section2Report {
  int q = 0;
  size_t domain_size = 0;                       // anisotropic 2-subspaces
  std::vector<size_t> subfield_orbit_lengths;   // half-spin subfield witness
  std::vector<size_t> augmented_orbit_lengths;  // with the Frobenius coset
  bool augmented_transitive = false;
  bool inconclusive_by_scale = false;  // q = 16 record
  Big order_G = 0;
  Big stabilizer_order = 0;  // |G| / domain size (exact division checked)
  long long elapsed_ms = 0;
  std::string to_json() const;
};

// q = 4: enumerates the minus-type 2-subspace domain of the plus-type
// 8-dimensional space and builds the *half-spin twist* of the subfield
// minus-type orthogonal group (the natural subfield copy is a different
// subgroup with six orbits): each subfield generator is factored into
// orthogonal transvections, lifted into the even Clifford algebra, and read
// off on the 8-dimensional half-spin module.  Checks the twisted witness
// has exactly two orbits and that a Frobenius-coset element normalizing it
// merges them.  q = 16 is out of desk scale and returns an
// inconclusive-by-scale record.
Section2Report verify_section2(int q);

struct NegativeControlReport {
  std::string id;
  Big order_G = 0;
  std::vector<FactorizationReport> pairs;  // factorizing pairs (explorer output)
  Big max_normalizer_order = 0;            // over all prime-order cyclic classes
  std::string to_json() const;
};

// Exhaustive pair explorer over a named control group.  Supported ids:
// "M11", "Sym(5)".."Sym(7)", "Alt(5)".."Alt(7)", "PSL2(13)", "PGammaL2(8)".
NegativeControlReport negative_control(const std::string& id);

// Orders |x| of cyclic subgroups (all orders, not only prime) for which
// G = N(<x>) N(<y>) holds, scanning every cyclic subgroup of <gens>
// exhaustively; sorted ascending, deduplicated.
std::vector<long long> factorizing_orders_with(const std::vector<Perm>& gens,
                                               const Perm& y, size_t cap = 1u << 21);

struct ScenarioConfig {
  std::string line;
  int n = 0, q = 0;
  std::vector<std::string> extensions;
  std::string strategy = "auto";
  size_t cap = 1u << 21;
  uint64_t seed = 1;
};

// "key = value" lines; keys: line, n, q, extensions (comma list), strategy,
// cap, seed.  '#' starts a comment.  Throws std::invalid_argument on
// unknown keys or malformed values.
ScenarioConfig parse_scenario_config(const std::string& text);

// Markdown table mirroring the catalogue columns.
std::string markdown_summary(const std::vector<LineResult>& results);

// ---- building blocks shared with the acceptance suite ----------------------

// Restriction of scalars GU_m(q) -> O_{2sm}(q0) in one step, q = q0^s,
// char 2: Q(v) = Tr_{F_q/F_q0} B(v, v), expressed in the standard form of
// the resulting type.  `gens` are the blown group generators, `scalar` the
// blown norm-one scalar of order q + 1, and `galois` the blown Frobenius
// z -> z^q0 (it conjugates `scalar` to its q0-th power).
struct UnitaryBlowup {
  const Fq* F = nullptr;  // target field
  ClassicalForm form;     // standard quadratic form, dimension 2sm
  std::vector<Mat> gens;
  Mat scalar;
  Mat galois;
};
// with_gens = false skips building the unitary group generators (only the
// form, scalar, and galois maps are produced), for dimensions where the
// group constructor is out of reach.
UnitaryBlowup unitary_blowup(int m, const Fq& target, const Fq& herm_field,
                             bool with_gens = true);

// Relabels perms onto one orbit (sorted point list); every generator must
// stabilize the orbit setwise.
std::vector<Perm> restrict_to_orbit(const std::vector<Perm>& perms,
                                    const std::vector<Pt>& orbit_points);

// Blockwise concatenation: point i of the k-th input domain becomes point
// offset_k + i.  All inputs must have one perm per generator.
std::vector<Perm> concat_perms(const std::vector<std::vector<Perm>>& blocks);

}  // namespace cgt
