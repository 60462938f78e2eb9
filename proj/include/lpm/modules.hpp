#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "lpm/linop.hpp"
#include "lpm/opnorm.hpp"

namespace lpm {

// Least-squares span of a fixed list of equally shaped matrices.
class MatrixSpan {
public:
  MatrixSpan() = default;
  explicit MatrixSpan(const std::vector<Eigen::MatrixXcd>& basis);

  struct Fit {
    Eigen::VectorXcd coords;
    double residual = 0.0;  // Frobenius distance, normalized by 1 + |m|_F
  };
  Fit fit(const Eigen::MatrixXcd& m) const;
  int rank() const;
  int size() const { return static_cast<int>(basis_.size()); }
  const std::vector<Eigen::MatrixXcd>& basis() const { return basis_; }

private:
  std::vector<Eigen::MatrixXcd> basis_;
  Eigen::MatrixXcd stacked_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr_;
};

// Concrete operator algebra on L^p(mu0): a linearly independent basis whose
// span is closed under multiplication (verified on construction).
struct MatrixAlgebra {
  LpSpace ambient;
  std::vector<Eigen::MatrixXcd> basis;
  MatrixSpan span;

  static MatrixAlgebra create(LpSpace ambient, std::vector<Eigen::MatrixXcd> basis,
                              double tol = 1e-8);
  int dim() const { return static_cast<int>(basis.size()); }
  LinOp op(int i) const;
  // coordinates in the basis; throws when m is outside the span (within tol)
  Eigen::VectorXcd coords(const Eigen::MatrixXcd& m, double tol = 1e-8) const;
};

MatrixAlgebra scalar_algebra(const PExponent& p);                 // C on l^p_1
MatrixAlgebra full_matrix_algebra(int d, const PExponent& p);     // M_d^p
MatrixAlgebra diagonal_algebra(int d, const PExponent& p);
MatrixAlgebra nilpotent_e12_algebra(const PExponent& p);          // span{E_12} in M_2^p

// Module pair (X, Y) over A: X maps L^p(mu0) -> L^p(mu1), Y maps back.
struct ModuleTriple {
  MatrixAlgebra algebra;
  LpSpace target;
  std::vector<Eigen::MatrixXcd> x_basis;
  std::vector<Eigen::MatrixXcd> y_basis;

  void validate() const;
  const LpSpace& source() const { return algebra.ambient; }
  LinOp x_op(int i) const;
  LinOp y_op(int i) const;
};

ModuleTriple module_over_self(const MatrixAlgebra& a);               // (A, A)
ModuleTriple module_lp_lq(int d, const PExponent& p);                // (l^p_d, l^q_d) over C
ModuleTriple module_lq_lp(int d, const PExponent& p);                // (l^q_d, l^p_d) over M_d^p

struct AxiomReport {
  double res_xa = 0.0;  // worst residual of x a against span X
  double res_yx = 0.0;  // worst residual of y x against span A
  double res_ay = 0.0;  // worst residual of a y against span Y
  std::string worst_pair;
  bool pass = false;
};

AxiomReport check_module_axioms(const ModuleTriple& m, double tol = 1e-8);

struct PairingResult {
  Eigen::VectorXcd coords;  // of yx over the A basis
  double residual = 0.0;
};

PairingResult pairing(const LinOp& y, const LinOp& x, const ModuleTriple& m);

// The "rank one" operator x y on L^p(mu1).
LinOp rank_one(const LinOp& x, const LinOp& y);

struct MembershipReport {
  bool member = false;
  double worst_residual = 0.0;
  std::string violation;  // names the offending basis element when not a member
};

// Membership in the module morphisms: t x stays in span X and y t in span Y.
MembershipReport in_module_morphisms(const LinOp& t, const ModuleTriple& m, double tol = 1e-8);

struct CStarDefect {
  // defect = ||x|| - sup_{||y||<=1} ||yx||, maximized over the basis; and the
  // symmetric quantity for Y. Point value plus certified bracket.
  double defect_x = 0.0, defect_x_lower = 0.0, defect_x_upper = 0.0;
  double defect_y = 0.0, defect_y_lower = 0.0, defect_y_upper = 0.0;
};

CStarDefect cstar_defect(const ModuleTriple& m, int sample_budget = 64, std::uint64_t seed = 7);

// Block-column X and block-row Y operators over the p-direct-sum target.
// Parts must share the algebra and the source space.
ModuleTriple direct_sum(const std::vector<ModuleTriple>& parts);

// Kronecker bases over A (x)_p B on the product spaces; axioms re-verified.
ModuleTriple external_tensor(const ModuleTriple& m1, const ModuleTriple& m2, double tol = 1e-8);

nlohmann::json module_to_json(const ModuleTriple& m);
ModuleTriple module_from_json(const nlohmann::json& j, double tol = 1e-8);

}  // namespace lpm
