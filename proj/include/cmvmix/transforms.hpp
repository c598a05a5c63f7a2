#pragma once

#include <utility>
#include <vector>

#include "cmvmix/context.hpp"
#include "cmvmix/kernels.hpp"

namespace cmv {

// W(z) = c (z - z_1) ... (z - z_{2d}) z^{-d}: 2d distinct nonzero roots off
// the unit circle, degrees exactly (+d, -d).
struct BalancedLaurent {
  Complex leading;
  std::vector<Complex> roots;
  int d = 0;
  Laurent expanded;
};
BalancedLaurent makeBalanced(Complex leading, std::vector<Complex> roots);

// Diagonal q x q multiplier diag(W_1, ..., W_q), all entries of the same
// degree d, with all q*2d roots pairwise distinct.
struct Perturbation {
  std::vector<BalancedLaurent> entries;
  int d = 0;

  int q() const { return static_cast<int>(entries.size()); }
  int bandWidth() const { return 2 * d * q(); }
  const Laurent& W(int b) const { return entries[b].expanded; }
  Complex root(int b, int j) const { return entries[b].roots[j]; }
  std::vector<Laurent> diag() const;
  // c_b z_{b,j}^{-d} prod_{s != j} (z_{b,j} - z_{b,s}); the residue factor
  // of W_b at its j-th root.
  Complex rootResidueFactor(int b, int j) const;
};
Perturbation makePerturbation(std::vector<BalancedLaurent> entries);

// d - c A^{-1} b via a linear solve. conditionOut (if nonnull) receives a
// cheap estimate ||A|| ||A^{-1}||.
Complex quasiDeterminant(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b,
                         const Eigen::RowVectorXcd& c, Complex d,
                         double* conditionOut = nullptr);

// ---- Christoffel (left multiplication by W) ----------------------------

// Evaluation matrix: rows j = n..n+2dq-1, columns (b, l) flattened b*2d+l,
// entries B_j^{(b)}(z_{b,l}).
Eigen::MatrixXcd evalMatrixB(const Family& B, const Perturbation& W, int n);

struct Connector {
  Eigen::MatrixXcd N;  // upper triangular, bandwidth 2dq+1
  std::vector<double> conditions;  // per solved row/column
};

// Production mode: each row solved from the root annihilation conditions
// with the outermost entry normalized to 1.
Connector christoffelConnector(const Family& B, const Perturbation& W, int rows);

// Verification mode: N_C = Uhat^{-1} U from both factorizations
// (truncation-exact for upper triangular products).
Eigen::MatrixXcd christoffelConnectorDirect(const GaussFactors& hatLeft,
                                            const GaussFactors& left);

// Cross-check of the second representation N_C = Lhat Wop L^{-1} against
// the direct one on the truncation-exact window.
double christoffelConnectorCross(const Eigen::MatrixXcd& Nc,
                                 const GaussFactors& hatLeft,
                                 const GaussFactors& left, const Perturbation& W);

// Quasi-determinant value V with V * Ntilde_{C,n} = W_b(z) Bhat_n^{(b)}(z)
// for the CMV-monic Bhat of the W-multiplied measure. Throws RootOfW when z
// hits a root of W_b.
Complex christoffelBHat(const Family& B, const Perturbation& W, int n, int b, Complex z);

// Value V with V = Ntilde_{C,n-1} * Ahat_{n-1}^{(a)}(x^{-1}), built from the
// plain kernel of the unperturbed measure at the roots of W.
Complex christoffelAHat(const KernelEngine& base, const Family& B, const Perturbation& W,
                        int n, int a, Complex x);

// Residual of W_b(y) Khat_{a,b}^{[n]}(x,y) = K_{a,b}^{[n]}(x,y)
//   + Ahat^{[n]}(x^{-1}) Ncorner B^{[n,2dq]}(y) over the given points.
double christoffelKernelConnection(const KernelEngine& base, const KernelEngine& hat,
                                   const Eigen::MatrixXcd& Nc, const Context& baseCtx,
                                   const Context& hatCtx, const Perturbation& W, int n,
                                   const std::vector<std::pair<Complex, Complex>>& xy);

// Residual of Ahat^{[n]}(w) N_C^{[n]} = A^{[n]}(w) at the given points.
double christoffelTruncatedA(const Eigen::MatrixXcd& Nc, const Context& baseCtx,
                             const Context& hatCtx, int n,
                             const std::vector<Complex>& ws);

// ---- Geronimus (division by W plus masses at the roots) ----------------

struct GeronimusData {
  Perturbation W;
  MatrixFunctional baseCheck;  // mu-check, atoms only at W-roots
  MatrixFunctional induced;    // mu = W mu-check (atoms annihilated)
  Eigen::MatrixXcd masses;     // (b*2d+j) x p table m_{b,a,j}
};
GeronimusData geronimusSetup(const MatrixFunctional& baseCheck, const Perturbation& W);

// N_G = U^{-1} Ucheck, truncation-exact.
Eigen::MatrixXcd geronimusConnectorDirect(const GaussFactors& left,
                                          const GaussFactors& checkLeft);
double geronimusConnectorCross(const Eigen::MatrixXcd& Ng, const GaussFactors& left,
                               const GaussFactors& checkLeft, const Perturbation& W);

// F_{n,(b,j)} = C_n^{(b)}(z_{b,j})
//             - sum_a residueFactor(b,j) m_{b,a,j} A_n^{(a)}(z_{b,j}^{-1}),
// rows n < rowCount, columns (b,j).
Eigen::MatrixXcd fValues(const GeronimusData& g, const Context& baseCtx, int rowCount);

// max residual of the homogeneous conditions sum_r F_{r,(b,j)} N_G(r,c) = 0
// over columns c in [c0, c1).
double fVanishingResidual(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& Ng,
                          int c0, int c1);

// Production mode: per column c, solve the homogeneous conditions with the
// outermost (top) entry normalized to 1.
Connector geronimusConnectorFromF(const Eigen::MatrixXcd& F, const Perturbation& W,
                                  int c0, int c1);

// Quasi-determinant value V with V * N_G(l+2dq, l+2dq) = Acheck_{l+2dq}^{(a)}(w),
// where w is passed straight to the A entries (use w = z^{-1} semantics).
Complex geronimusAFormula(const Eigen::MatrixXcd& F, const Family& A, int ell, int a,
                          Complex w);

// Row vector V over b' with V_{b'} = Ntilde_{G,l} * Bcheck_{l+2dq}^{(b')}(y),
// Ntilde_{G,l} = N_G(l, l+2dq); uses only unperturbed-measure data.
Eigen::RowVectorXcd geronimusBFormula(const GeronimusData& g, const Context& baseCtx,
                                      const KernelEngine& base,
                                      const Eigen::MatrixXcd& F, int ell, Complex y);

// Residuals of the connection identities, evaluated on truncation-exact
// windows with both factorizations known.
struct GeronimusConnectionReport {
  double relatB;      // N_G Bcheck(z) = B(z) W(z) on interior rows
  double relatA;      // A(z^{-1}) N_G = Acheck(z^{-1})
  double skfD;        // N_G Dcheck(z) = D(z) on interior rows
  double skfC;        // W(z) Ccheck(z) - C(z) N_G = <deltaW pairing>
  double connCCauchy; // W(z) KCcheck = KC W(y) - C Ncorner Bcorner + deltaW
  double connDCauchy; // KDcheck = KD - A(x^{-1}) Ncorner Dcorner
  double connKernel;  // Kcheck - K W(y) = -A(x^{-1}) Ncorner Bcheckcorner
  double worst() const;
};
GeronimusConnectionReport geronimusConnectionResiduals(
    const GeronimusData& g, const Context& baseCtx, const Context& checkCtx,
    const Eigen::MatrixXcd& Ng, int n, const std::vector<Complex>& zs,
    const std::vector<std::pair<Complex, Complex>>& xy);

}  // namespace cmv
