#include "rqi/causality.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/QR>

namespace rqi::causality {

namespace {

constexpr double kCommuteTol = 1e-10;
constexpr double kKernelTol = 1e-10;
constexpr double kProbFloor = 1e-12;

CMatX eye(int d) { return CMatX::Identity(d, d); }

CMatX projector(const CVecX& v) { return v * v.adjoint(); }

/// Permutation taking C^da ⊗ C^db to C^db ⊗ C^da.
CMatX swap_operator(int da, int db) {
  CMatX s = CMatX::Zero(da * db, da * db);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) s(b * da + a, a * db + b) = 1;
  return s;
}

void require_state(const CMatX& rho, int dim, const char* what) {
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::domain_error(std::string(what) + ": state dimension does not match the operation");
  }
  validate_density(rho, {1e-10, 1e-10, 1e-10}, what);
}

}  // namespace

KrausEnsemble::KrausEnsemble(std::vector<Outcome> outcomes, double tol)
    : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw std::domain_error("KrausEnsemble: no outcomes");
  dim_ = -1;
  for (const auto& o : outcomes_) {
    if (o.empty()) throw std::domain_error("KrausEnsemble: outcome without Kraus operators");
    for (const auto& a : o) {
      if (a.rows() != a.cols() || a.rows() == 0) throw std::domain_error("KrausEnsemble: Kraus operators must be square");
      if (dim_ < 0) dim_ = static_cast<int>(a.rows());
      if (a.rows() != dim_) throw std::domain_error("KrausEnsemble: inconsistent Kraus dimensions");
    }
  }
  CMatX sum = CMatX::Zero(dim_, dim_);
  for (std::size_t mu = 0; mu < outcomes_.size(); ++mu) sum += povm_element(mu);
  if ((sum - eye(dim_)).cwiseAbs().maxCoeff() > tol) {
    throw std::domain_error("KrausEnsemble: completeness relation violated");
  }
}

KrausEnsemble KrausEnsemble::from_projectors(const std::vector<CMatX>& projectors) {
  std::vector<Outcome> o;
  for (const auto& p : projectors) o.push_back({p});
  return KrausEnsemble(std::move(o));
}

KrausEnsemble KrausEnsemble::identity(int dim) { return KrausEnsemble({{eye(dim)}}); }

CMatX KrausEnsemble::povm_element(std::size_t mu) const {
  CMatX e = CMatX::Zero(dim_, dim_);
  for (const auto& a : outcomes_.at(mu)) e += a.adjoint() * a;
  return e;
}

KrausEnsemble KrausEnsemble::embed_first(int dim_b) const {
  std::vector<Outcome> o;
  for (const auto& out : outcomes_) {
    Outcome e;
    for (const auto& a : out) e.push_back(kron(a, eye(dim_b)));
    o.push_back(std::move(e));
  }
  return KrausEnsemble(std::move(o));
}

KrausEnsemble KrausEnsemble::embed_second(int dim_a) const {
  std::vector<Outcome> o;
  for (const auto& out : outcomes_) {
    Outcome e;
    for (const auto& a : out) e.push_back(kron(eye(dim_a), a));
    o.push_back(std::move(e));
  }
  return KrausEnsemble(std::move(o));
}

BipartiteOperation::BipartiteOperation(KrausEnsemble ensemble, int dim_a, int dim_b)
    : ensemble_(std::move(ensemble)), dim_a_(dim_a), dim_b_(dim_b) {
  if (dim_a < 1 || dim_b < 1 || dim_a * dim_b != ensemble_.dim()) {
    throw std::domain_error("BipartiteOperation: factor dimensions do not match the Kraus operators");
  }
}

CMatX BipartiteOperation::apply_averaged(const CMatX& x) const {
  CMatX out = CMatX::Zero(x.rows(), x.cols());
  for (const auto& o : ensemble_.outcomes())
    for (const auto& a : o) out += a * x * a.adjoint();
  return out;
}

BipartiteOperation BipartiteOperation::swapped() const {
  const CMatX s = swap_operator(dim_a_, dim_b_);
  std::vector<KrausEnsemble::Outcome> o;
  for (const auto& out : ensemble_.outcomes()) {
    KrausEnsemble::Outcome e;
    for (const auto& a : out) e.push_back(s * a * s.adjoint());
    o.push_back(std::move(e));
  }
  return BipartiteOperation(KrausEnsemble(std::move(o)), dim_b_, dim_a_);
}

OutcomeStats measure(const KrausEnsemble& ensemble, const CMatX& rho) {
  require_state(rho, ensemble.dim(), "measure");
  OutcomeStats s;
  s.averaged = CMatX::Zero(rho.rows(), rho.cols());
  for (const auto& o : ensemble.outcomes()) {
    CMatX post = CMatX::Zero(rho.rows(), rho.cols());
    for (const auto& a : o) post += a * rho * a.adjoint();
    const double p = post.trace().real();
    s.probabilities.push_back(p);
    s.averaged += post;
    s.states.push_back(p > kProbFloor ? CMatX(post / p) : CMatX(CMatX::Zero(rho.rows(), rho.cols())));
  }
  return s;
}

MarginalReport bob_marginal_independence_joint(const KrausEnsemble& op_a, const KrausEnsemble& op_b,
                                               const CMatX& rho) {
  if (op_a.dim() != op_b.dim()) throw std::domain_error("bob_marginal_independence: dimension mismatch");
  const CMatX after_a = measure(op_a, rho).averaged;
  MarginalReport r;
  for (std::size_t nu = 0; nu < op_b.outcome_count(); ++nu) {
    const CMatX e = op_b.povm_element(nu);
    r.joint.push_back((e * after_a).trace().real());
    r.bob_only.push_back((e * rho).trace().real());
    r.max_deviation = std::max(r.max_deviation, std::abs(r.joint.back() - r.bob_only.back()));
  }
  return r;
}

MarginalReport bob_marginal_independence(const KrausEnsemble& op_a, const KrausEnsemble& op_b,
                                         const CMatX& rho) {
  return bob_marginal_independence_joint(op_a.embed_first(op_b.dim()),
                                         op_b.embed_second(op_a.dim()), rho);
}

bool commuting_kraus_check(const KrausEnsemble& op_a, const KrausEnsemble& op_b) {
  if (op_a.dim() != op_b.dim()) throw std::domain_error("commuting_kraus_check: dimension mismatch");
  for (const auto& oa : op_a.outcomes())
    for (const auto& a : oa)
      for (const auto& ob : op_b.outcomes())
        for (const auto& b : ob) {
          if (operator_norm(a * b - b * a) > kCommuteTol) return false;
        }
  return true;
}

namespace {

std::vector<CMatX> matrix_units(int d) {
  std::vector<CMatX> out;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      CMatX e = CMatX::Zero(d, d);
      e(i, j) = 1;
      out.push_back(e);
    }
  return out;
}

std::vector<CMatX> traceless_basis(int d) {
  std::vector<CMatX> out;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j && i == 0) continue;
      CMatX e = CMatX::Zero(d, d);
      if (i == j) {
        e(0, 0) = 1;
        e(i, i) = -1;
      } else {
        e(i, j) = 1;
      }
      out.push_back(e);
    }
  return out;
}

CMatX receiver_marginal(const BipartiteOperation& op, const CMatX& rho) {
  return partial_trace_b(op.apply_averaged(rho), op.dim_a(), op.dim_b());
}

CVecX basis_vector(int d, int i) {
  CVecX v = CVecX::Zero(d);
  v(i) = 1;
  return v;
}

/// Best computational product pair |i⟩|j⟩ vs |i⟩|k⟩.
void search_product_witness(const BipartiteOperation& op, SemicausalWitness& w) {
  const int da = op.dim_a(), db = op.dim_b();
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = j + 1; k < db; ++k) {
        const CMatX r1 = kron(projector(basis_vector(da, i)), projector(basis_vector(db, j)));
        const CMatX r2 = kron(projector(basis_vector(da, i)), projector(basis_vector(db, k)));
        const CMatX m1 = receiver_marginal(op, r1), m2 = receiver_marginal(op, r2);
        const double success = 0.5 + 0.25 * trace_norm(m1 - m2);
        if (success > w.success) {
          w.success = success;
          w.rho1 = r1;
          w.rho2 = r2;
          w.marginal1 = m1;
          w.marginal2 = m2;
        }
      }
}

void search_sampled_witness(const BipartiteOperation& op, SemicausalWitness& w) {
  std::mt19937_64 rng(7);
  const int da = op.dim_a(), db = op.dim_b();
  for (int s = 0; s < 256; ++s) {
    const CVecX a = random_unitary(da, rng).col(0);
    const CVecX b = random_unitary(db, rng).col(0);
    const CMatX u = kron(eye(da), random_unitary(db, rng));
    const CMatX r1 = kron(projector(a), projector(b));
    const CMatX r2 = u * r1 * u.adjoint();
    const CMatX m1 = receiver_marginal(op, r1), m2 = receiver_marginal(op, r2);
    const double success = 0.5 + 0.25 * trace_norm(m1 - m2);
    if (success > w.success) {
      w.success = success;
      w.rho1 = r1;
      w.rho2 = r2;
      w.marginal1 = m1;
      w.marginal2 = m2;
    }
  }
}

SemicausalReport semicausal_b_to_a(const BipartiteOperation& op) {
  SemicausalReport r;
  SemicausalWitness w;
  for (const auto& x : matrix_units(op.dim_a()))
    for (const auto& y : traceless_basis(op.dim_b())) {
      const CMatX d = partial_trace_b(op.apply_averaged(kron(x, y)), op.dim_a(), op.dim_b());
      const double v = operator_norm(d);
      if (v > r.max_violation) {
        r.max_violation = v;
        w.x = x;
        w.y = y;
        w.difference = d;
      }
    }
  r.semicausal = r.max_violation <= kKernelTol;
  if (!r.semicausal) {
    search_product_witness(op, w);
    if (w.success - 0.5 <= kKernelTol) search_sampled_witness(op, w);
    r.witness = std::move(w);
  }
  return r;
}

}  // namespace

SemicausalReport semicausal_check(const BipartiteOperation& op, Direction direction) {
  if (direction == Direction::b_to_a) return semicausal_b_to_a(op);
  SemicausalReport r = semicausal_b_to_a(op.swapped());
  if (r.witness) {
    const CMatX s = swap_operator(op.dim_b(), op.dim_a());
    r.witness->rho1 = s * r.witness->rho1 * s.adjoint();
    r.witness->rho2 = s * r.witness->rho2 * s.adjoint();
  }
  return r;
}

double semicausal_sampled_gap(const BipartiteOperation& op, Direction direction, int samples,
                              std::uint64_t seed) {
  const BipartiteOperation o = direction == Direction::b_to_a ? op : op.swapped();
  std::mt19937_64 rng(seed);
  const int da = o.dim_a(), db = o.dim_b();
  double gap = 0;
  for (int s = 0; s < samples; ++s) {
    const CVecX a = random_unitary(da, rng).col(0);
    const CVecX b = random_unitary(db, rng).col(0);
    const CMatX u = kron(eye(da), random_unitary(db, rng));
    const CMatX r1 = kron(projector(a), projector(b));
    const CMatX r2 = u * r1 * u.adjoint();
    gap = std::max(gap, 0.5 * trace_norm(receiver_marginal(o, r1) - receiver_marginal(o, r2)));
  }
  return gap;
}

CMatX random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatX z(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) z(i, j) = Complex(n(rng), n(rng));
  Eigen::HouseholderQR<CMatX> qr(z);
  CMatX q = qr.householderQ() * CMatX::Identity(dim, dim);
  const CMatX r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

std::array<CVec4, 4> bell_states() {
  const double s = 1.0 / std::sqrt(2.0);
  return {CVec4(0, s, -s, 0), CVec4(0, s, s, 0), CVec4(s, 0, 0, -s), CVec4(s, 0, 0, s)};
}

KrausEnsemble incomplete_bell_pvm() {
  const CMatX e1 = projector(bell_states()[3]);
  return KrausEnsemble::from_projectors({e1, eye(4) - e1});
}

KrausEnsemble complete_bell_pvm() {
  std::vector<CMatX> p;
  for (const auto& b : bell_states()) p.push_back(projector(b));
  return KrausEnsemble::from_projectors(p);
}

IncompleteBellReport incomplete_bell_demo() {
  const KrausEnsemble pvm = incomplete_bell_pvm();
  const CMatX r00 = projector(basis_vector(4, 0));
  const CMatX r01 = projector(basis_vector(4, 1));
  const OutcomeStats s00 = measure(pvm, r00), s01 = measure(pvm, r01);
  IncompleteBellReport r;
  r.probabilities_00 = s00.probabilities;
  r.probabilities_01 = s01.probabilities;
  r.marginal_00 = partial_trace_b(s00.averaged, 2, 2);
  r.marginal_01 = partial_trace_b(s01.averaged, 2, 2);
  r.success = 1.0 - error_probability(r.marginal_00, r.marginal_01);
  return r;
}

std::array<CMatX, 4> orthogonal_product_projectors() {
  const double s = 1.0 / std::sqrt(2.0);
  const CVecX z0 = basis_vector(2, 0), z1 = basis_vector(2, 1);
  CVecX xp(2), xm(2);
  xp << s, s;
  xm << s, -s;
  return {kron(projector(z0), projector(z0)), kron(projector(z0), projector(z1)),
          kron(projector(z1), projector(xp)), kron(projector(z1), projector(xm))};
}

OutcomeStats one_way_pvm_protocol(const CMatX& rho) {
  require_state(rho, 4, "one_way_pvm_protocol");
  const double s = 1.0 / std::sqrt(2.0);
  CVecX xp(2), xm(2);
  xp << s, s;
  xm << s, -s;
  const std::array<std::array<CVecX, 2>, 2> bob_basis{
      {{basis_vector(2, 0), basis_vector(2, 1)}, {xp, xm}}};
  OutcomeStats out;
  out.averaged = CMatX::Zero(4, 4);
  for (int bit = 0; bit < 2; ++bit) {
    const CMatX alice = kron(projector(basis_vector(2, bit)), eye(2));
    const CMatX after_alice = alice * rho * alice.adjoint();
    for (int b = 0; b < 2; ++b) {
      const CMatX bob = kron(eye(2), projector(bob_basis[bit][b]));
      const CMatX post = bob * after_alice * bob.adjoint();
      const double p = post.trace().real();
      out.probabilities.push_back(p);
      out.averaged += post;
      out.states.push_back(p > kProbFloor ? CMatX(post / p) : CMatX(CMatX::Zero(4, 4)));
    }
  }
  return out;
}

namespace {

// Qubits: 0 Alice input, 1 Bob input, 2 Bob ancilla, 3 Alice ancilla.
CMatX on_qubit0(const CMatX& op) { return kron(op, eye(8)); }
CMatX on_qubit3(const CMatX& op) { return kron(eye(8), op); }
CMatX on_qubits12(const CMatX& op) { return kron(eye(2), kron(op, eye(2))); }

CMatX ancilla_projector(int alice_z, int s) {
  if (alice_z == 0) return projector(basis_vector(2, s));
  const double r = 1.0 / std::sqrt(2.0);
  CVecX v(2);
  v << r, (s == 0 ? r : -r);
  return projector(v);
}

/// Kraus operator for Bell outcome k, Alice bit z and ancilla bit s.
CMatX verification_kraus(int k, int z, int s) {
  return on_qubit3(ancilla_projector(z, s)) * on_qubit0(projector(basis_vector(2, z))) *
         on_qubits12(projector(bell_states()[k]));
}

CMatX with_ancilla(const CMatX& rho) { return kron(rho, projector(bell_states()[0])); }

}  // namespace

DecisionTable derive_verification_decision_table() {
  DecisionTable t;
  for (auto& a : t)
    for (auto& b : a) b = {-1, -1};
  const auto inputs = orthogonal_product_projectors();
  for (int mu = 0; mu < 4; ++mu) {
    const CMatX full = with_ancilla(inputs[mu]);
    for (int k = 0; k < 4; ++k)
      for (int z = 0; z < 2; ++z)
        for (int s = 0; s < 2; ++s) {
          const CMatX a = verification_kraus(k, z, s);
          const double p = (a * full * a.adjoint()).trace().real();
          if (p <= kProbFloor) continue;
          if (t[k][z][s] != -1 && t[k][z][s] != mu) {
            throw std::logic_error("verification table: outcome combination is ambiguous");
          }
          t[k][z][s] = mu;
        }
  }
  for (const auto& a : t)
    for (const auto& b : a)
      for (int v : b)
        if (v < 0) throw std::logic_error("verification table: unreachable outcome combination");
  return t;
}

const DecisionTable& verification_decision_table() {
  // [bell: Ψ⁻, Ψ⁺, Φ⁻, Φ⁺][alice z][ancilla bit]
  static const DecisionTable table{{
      {{{0, 1}, {2, 3}}},
      {{{0, 1}, {3, 2}}},
      {{{1, 0}, {2, 3}}},
      {{{1, 0}, {3, 2}}},
  }};
  return table;
}

OutcomeStats verification_measurement_sim(const CMatX& rho) {
  require_state(rho, 4, "verification_measurement_sim");
  const CMatX full = with_ancilla(rho);
  const DecisionTable& t = verification_decision_table();
  OutcomeStats out;
  out.probabilities.assign(4, 0.0);
  std::vector<CMatX> post(4, CMatX::Zero(16, 16));
  out.averaged = CMatX::Zero(16, 16);
  for (int k = 0; k < 4; ++k)
    for (int z = 0; z < 2; ++z)
      for (int s = 0; s < 2; ++s) {
        const CMatX a = verification_kraus(k, z, s);
        const CMatX branch = a * full * a.adjoint();
        post[t[k][z][s]] += branch;
        out.averaged += branch;
      }
  for (int mu = 0; mu < 4; ++mu) {
    const double p = post[mu].trace().real();
    out.probabilities[mu] = p;
    out.states.push_back(p > kProbFloor ? CMatX(post[mu] / p) : CMatX(CMatX::Zero(16, 16)));
  }
  return out;
}

TeleportationBranches teleportation_branches(const CVec2& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw std::domain_error("teleportation_branches: state not normalized");
  // Qubits: Bob input, Bob ancilla, Alice ancilla.
  const CVecX full = kron(CMatX(psi), CMatX(bell_states()[0]));
  const std::array<CMat2, 4> corrections{CMat2::Identity(), pauli_z(), pauli_x(),
                                         CMat2(pauli_x() * pauli_z())};
  TeleportationBranches out;
  const auto bells = bell_states();
  for (int k = 0; k < 4; ++k) {
    CVec2 alice = CVec2::Zero();
    for (int q12 = 0; q12 < 4; ++q12)
      for (int q3 = 0; q3 < 2; ++q3) alice[q3] += std::conj(bells[k][q12]) * full[2 * q12 + q3];
    const double w = alice.squaredNorm();
    out.weights[k] = w;
    out.fidelities[k] = w > 0 ? std::norm((corrections[k] * psi).dot(alice)) / w : 0.0;
  }
  return out;
}

BipartiteOperation separable_superoperator(const std::vector<std::pair<CMatX, CMatX>>& ops) {
  if (ops.empty()) throw std::domain_error("separable_superoperator: no operators");
  const int da = static_cast<int>(ops.front().first.rows());
  const int db = static_cast<int>(ops.front().second.rows());
  KrausEnsemble::Outcome kraus;
  for (const auto& [a, b] : ops) {
    if (a.rows() != da || a.cols() != da || b.rows() != db || b.cols() != db) {
      throw std::domain_error("separable_superoperator: inconsistent factor dimensions");
    }
    kraus.push_back(kron(a, b));
  }
  return BipartiteOperation(KrausEnsemble({std::move(kraus)}), da, db);
}

}  // namespace rqi::causality
