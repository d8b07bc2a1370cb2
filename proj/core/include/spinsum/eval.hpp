#pragma once

#include "spinsum/algebra.hpp"
#include "spinsum/spin.hpp"
#include "spinsum/surface.hpp"
#include "spinsum/tensor.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace spinsum {

// Where one out-leg of a bivalent vertex lands: an input of a trivalent
// vertex, or a codomain position.
struct LegEnd {
  int tri = -1;
  int slot = -1;
  int open = -1;
};

// Dual graph of a marked triangulation. Bivalent vertex e carries c_{sign[e]};
// its leg 0 points to the triangle on the left of e, leg 1 to the right.
struct DiagramGraph {
  int num_trivalent = 0;
  std::vector<int> sign;
  std::vector<std::array<LegEnd, 2>> ends;
  int num_open = 0;
  std::vector<std::pair<int, int>> open_meta;  // (boundary, position) per codomain leg

  int num_bivalent() const { return static_cast<int>(sign.size()); }
  int num_wires() const;
};

// Throws std::invalid_argument when a slot or codomain leg is not hit
// exactly once.
void check_graph(const DiagramGraph& g);

DiagramGraph build_graph(const MarkedTriangulation& tri, const Signs& signs);

// Shape of a network: node leg counts and wires (node, leg, node, leg).
struct NetworkShape {
  std::vector<int> legs;
  struct Wire {
    int a, la, b, lb;
  };
  std::vector<Wire> wires;
};

// Bivalent vertices are nodes 0..E-1, trivalent ones E..E+F-1.
NetworkShape network_shape(const DiagramGraph& g);

// Merge (a, b) of live cluster ids; the result gets id n + step.
struct Schedule {
  std::vector<std::pair<int, int>> merges;
  int max_legs = 0;
};

Schedule plan_contraction(const NetworkShape& shape);
Schedule plan_contraction(const DiagramGraph& g);
// Uniformly random connected merges; disconnected leftovers merged last.
Schedule random_schedule(const NetworkShape& shape, std::mt19937_64& rng);

struct Amplitude {
  GradedTensor tensor;
  BoundaryTypes types;                         // empty for raw amplitudes
  std::vector<std::pair<int, int>> leg_meta;  // (boundary, position)

  bool is_scalar() const { return tensor.num_legs() == 0; }
  Scalar scalar() const { return tensor.scalar(); }
};

// Precomputed generators for one algebra.
class Evaluator {
 public:
  explicit Evaluator(GradedFrobeniusAlgebra A, Budget budget = Budget::from_env());

  const GradedFrobeniusAlgebra& algebra() const { return A_; }
  const DerivedStructure& derived() const { return D_; }
  const PredicateReport& predicates() const { return P_; }
  const Budget& budget() const { return budget_; }

  // Network value with Out legs in codomain order.
  GradedTensor contract_outputs(const DiagramGraph& g) const;
  GradedTensor contract_outputs(const DiagramGraph& g, const Schedule& s) const;
  GradedTensor exhaustive_outputs(const DiagramGraph& g) const;

  // Turn codomain legs into inputs with b.
  GradedTensor flip(const GradedTensor& outputs) const;

  Amplitude raw(const DiagramGraph& g) const;
  Amplitude raw(const DiagramGraph& g, const Schedule& s) const;
  Amplitude exhaustive(const DiagramGraph& g) const;
  Amplitude raw(const MarkedTriangulation& tri, const Signs& s) const;
  Amplitude evaluate(const MarkedTriangulation& tri, const Signs& s, const BoundaryTypes& types) const;

 private:
  GradedFrobeniusAlgebra A_;
  DerivedStructure D_;
  PredicateReport P_;
  Budget budget_;
  GradedTensor c_minus_, c_plus_, t_hat_;
};

Amplitude evaluate_raw(const MarkedTriangulation& tri, const Signs& s, const GradedFrobeniusAlgebra& A);
// Throws std::invalid_argument on non-admissible signs and std::domain_error
// when A fails the state-sum predicates.
Amplitude evaluate(const MarkedTriangulation& tri, const Signs& s, const BoundaryTypes& types,
                   const GradedFrobeniusAlgebra& A);
Amplitude contract_exhaustive(const DiagramGraph& g, const GradedFrobeniusAlgebra& A);

// The local identities between t and c_{+-1} that make the state sum
// independent of the marking and of Pachner moves. Each check compares two
// open diagrams as exact tensors.
struct RelationCheck {
  int relation = 0;
  std::string label;
  bool holds = false;
};

std::vector<RelationCheck> check_relations(const Evaluator& ev);

}  // namespace spinsum
