#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ccnr/bipartite.hpp"
#include "ccnr/random.hpp"

namespace ccnr {

enum class Family {
  MaxMixed,
  MaxEntangled,
  BellDiagonal,
  Werner2,
  Isotropic,
  TilesUpb,
  PyramidUpb,
  Horodecki3x3,
  HorodeckiMix,
  TwoByTwoFamily,
  RandomMixed,
  RandomSeparable,
};

const char* to_string(Family f);
// Throws PreconditionError for an unknown name.
Family family_from_string(const std::string& name);
const std::vector<Family>& all_families();

// A catalog family plus its parameters. Textual form: the family name
// followed by key=value pairs, e.g. "horodecki3x3 a=0.236".
struct StateSpec {
  Family family;
  std::map<std::string, double> params;

  std::string to_string() const;
};

// Parses the textual form; bell_diagonal also accepts weights=w0,w1,w2,w3.
StateSpec parse_state_spec(const std::vector<std::string>& tokens);
StateSpec parse_state_spec(const std::string& text);

// Parameter names accepted by a family (for --help and validation).
std::vector<std::string> family_parameters(Family f);

// Builds the state; throws PreconditionError on missing, unknown or
// out-of-range parameters.
BipartiteState build(const StateSpec& spec);

BipartiteState max_mixed(std::size_t d);
// (1/d) sum_{i,j} |ii><jj|
BipartiteState max_entangled(std::size_t d);
// Weights on |Phi+>, |Phi->, |Psi+>, |Psi->; non-negative, summing to 1.
BipartiteState bell_diagonal(const std::array<double, 4>& weights);
// phi |Psi-><Psi-| + (1 - phi)/3 (I - |Psi-><Psi-|), phi in [0, 1].
// Entangled iff phi > 1/2.
BipartiteState werner2(double phi);
// f |Phi><Phi| + (1 - f)/(d^2 - 1) (I - |Phi><Phi|), f in [0, 1].
// Entangled iff f > 1/d.
BipartiteState isotropic(std::size_t d, double f);

// Product vectors (length 9) of the two 3x3 unextendible product bases.
std::vector<ComplexMatrix> tiles_upb_vectors();
std::vector<ComplexMatrix> pyramid_upb_vectors();
// (I - sum_i |psi_i><psi_i|) / 4 for a five-element 3x3 UPB.
BipartiteState upb_state(const std::vector<ComplexMatrix>& basis);
BipartiteState tiles_upb();
BipartiteState pyramid_upb();

// Horodecki 3x3 PPT entangled state, 0 < a < 1.
BipartiteState horodecki3x3(double a);
// p * horodecki3x3(a) + (1 - p) I/9.
BipartiteState horodecki_mix(double a, double p);
// 2x2 family with b = sqrt(1 - a^2); a in [0, 1], p in [0, 1].
BipartiteState two_by_two_family(double a, double p);

struct EnsembleTerm {
  double probability;
  ComplexMatrix rho_a;
  ComplexMatrix rho_b;
};

// A separable decomposition sum_i p_i rho_a_i (x) rho_b_i.
struct Ensemble {
  std::vector<EnsembleTerm> terms;

  ComplexMatrix to_matrix() const;
};

struct SeparableSample {
  BipartiteState state;
  Ensemble ensemble;
};

// G G^H / tr(G G^H) with G an (mn) x rank complex Gaussian matrix.
BipartiteState random_mixed(std::size_t m, std::size_t n, std::size_t rank, std::uint64_t seed);
BipartiteState random_mixed(std::size_t m, std::size_t n, std::size_t rank, Rng& rng);

// Convex mixture of `terms` random pure product states with uniformly drawn
// (then normalized) weights.
SeparableSample random_separable(std::size_t m, std::size_t n, std::size_t terms,
                                 std::uint64_t seed);
SeparableSample random_separable(std::size_t m, std::size_t n, std::size_t terms, Rng& rng);

}  // namespace ccnr
