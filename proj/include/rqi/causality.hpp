// causality.hpp
// Kraus ensembles on bipartite systems, no-signalling checks and the
// two-qubit measurement protocols built from local operations.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "rqi/density.hpp"

namespace rqi::causality {

/// Outcome-indexed Kraus families {A_μm}.
class KrausEnsemble {
 public:
  using Outcome = std::vector<CMatX>;

  /// Validates square matrices of one dimension and Σ A†A = I within `tol`.
  explicit KrausEnsemble(std::vector<Outcome> outcomes, double tol = 1e-10);

  /// One Kraus operator (the projector) per outcome.
  static KrausEnsemble from_projectors(const std::vector<CMatX>& projectors);
  static KrausEnsemble identity(int dim);

  int dim() const { return dim_; }
  std::size_t outcome_count() const { return outcomes_.size(); }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  /// E_μ = Σ_m A†A.
  CMatX povm_element(std::size_t mu) const;

  /// A ↦ A⊗I_{dim_b}.
  KrausEnsemble embed_first(int dim_b) const;
  /// B ↦ I_{dim_a}⊗B.
  KrausEnsemble embed_second(int dim_a) const;

 private:
  std::vector<Outcome> outcomes_;
  int dim_ = 0;
};

class BipartiteOperation {
 public:
  BipartiteOperation(KrausEnsemble ensemble, int dim_a, int dim_b);

  const KrausEnsemble& ensemble() const { return ensemble_; }
  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  /// T′(X) = Σ_μm A X A†.
  CMatX apply_averaged(const CMatX& x) const;
  /// Same operation with the tensor factors exchanged.
  BipartiteOperation swapped() const;

 private:
  KrausEnsemble ensemble_;
  int dim_a_, dim_b_;
};

struct OutcomeStats {
  std::vector<double> probabilities;
  /// Normalized post-measurement states; zero when p_μ ≤ 1e-12.
  std::vector<CMatX> states;
  /// Σ_μ Σ_m A ρ A†.
  CMatX averaged;
};

OutcomeStats measure(const KrausEnsemble& ensemble, const CMatX& rho);

struct MarginalReport {
  std::vector<double> joint;     // Bob's distribution after Alice's operation
  std::vector<double> bob_only;  // Bob's distribution alone
  double max_deviation = 0;
};

/// Both ensembles act on the joint space.
MarginalReport bob_marginal_independence_joint(const KrausEnsemble& op_a, const KrausEnsemble& op_b,
                                               const CMatX& rho);
/// Local ensembles on the A and B factors.
MarginalReport bob_marginal_independence(const KrausEnsemble& op_a, const KrausEnsemble& op_b,
                                         const CMatX& rho);

/// max ‖[A_μm, B_νn]‖ ≤ 1e-10 over all Kraus pairs.
bool commuting_kraus_check(const KrausEnsemble& op_a, const KrausEnsemble& op_b);

enum class Direction {
  b_to_a,  // Bob cannot signal to Alice
  a_to_b   // Alice cannot signal to Bob
};

struct SemicausalWitness {
  CMatX x;             // operator on the receiving side
  CMatX y;             // traceless operator on the sending side
  CMatX difference;    // partial trace of T′(X⊗Y) onto the receiver
  CMatX rho1, rho2;    // inputs differing by a sender-local unitary
  CMatX marginal1, marginal2;
  double success = 0.5;  // optimal probability of telling the marginals apart
};

struct SemicausalReport {
  bool semicausal = true;
  double max_violation = 0;
  std::optional<SemicausalWitness> witness;
};

/// Checks that the receiver's marginal of T′ is blind to every traceless
/// operator on the sender's side.
SemicausalReport semicausal_check(const BipartiteOperation& op, Direction direction);

/// Largest receiver-marginal trace distance over sampled product inputs and
/// sender-local unitaries.
double semicausal_sampled_gap(const BipartiteOperation& op, Direction direction, int samples,
                              std::uint64_t seed);

/// Haar-random unitary.
CMatX random_unitary(int dim, std::mt19937_64& rng);

/// Bell states on two qubits in the order Ψ⁻, Ψ⁺, Φ⁻, Φ⁺.
std::array<CVec4, 4> bell_states();

struct IncompleteBellReport {
  std::vector<double> probabilities_00, probabilities_01;
  CMatX marginal_00, marginal_01;
  double success = 0;
};

/// {|Φ⁺⟩⟨Φ⁺|, 1-|Φ⁺⟩⟨Φ⁺|}.
KrausEnsemble incomplete_bell_pvm();
KrausEnsemble complete_bell_pvm();
IncompleteBellReport incomplete_bell_demo();

/// |00⟩, |01⟩, |1+⟩, |1-⟩ projectors.
std::array<CMatX, 4> orthogonal_product_projectors();

/// Alice measures z, sends the bit, Bob measures z (bit 0) or x (bit 1).
OutcomeStats one_way_pvm_protocol(const CMatX& rho);

/// Verification outcome μ (0-based) indexed by [bell][alice_z][ancilla].
using DecisionTable = std::array<std::array<std::array<int, 2>, 2>, 4>;
const DecisionTable& verification_decision_table();
/// Rebuilds the table by brute force over the four projector inputs.
DecisionTable derive_verification_decision_table();

/// Bob's Bell measurement on his input and ancilla half, Alice's z on her
/// input and z-or-x on her ancilla half, combined through the decision table.
OutcomeStats verification_measurement_sim(const CMatX& rho);

struct TeleportationBranches {
  std::array<double, 4> weights{};     // Bell outcome probabilities
  std::array<double, 4> fidelities{};  // overlap of Alice's half with σ_k|ψ⟩
};
/// |ψ⟩|Ψ⁻⟩ decomposed over Bob's Bell outcomes.
TeleportationBranches teleportation_branches(const CVec2& psi);

/// T(ρ) = Σ_k (A_k⊗B_k) ρ (A_k⊗B_k)†, single outcome.
BipartiteOperation separable_superoperator(const std::vector<std::pair<CMatX, CMatX>>& ops);

}  // namespace rqi::causality
