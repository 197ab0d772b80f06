#include "gaintune/matrixkit.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

namespace gaintune {

double inf_norm(const Mat& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

namespace {

void fix_eigvec_signs(Mat& v) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        for (Eigen::Index r = 0; r < v.rows(); ++r) {
            const double x = v(r, c);
            if (std::abs(x) > 1e-12) {
                if (x < 0.0) v.col(c) *= -1.0;
                break;
            }
        }
    }
}

} // namespace

SymEig sym_eig(const Mat& a) {
    const Eigen::Index n = a.rows();
    if (n == 0 || a.cols() != n)
        throw InvalidMatrix("sym_eig: matrix must be square and nonempty");
    const double scale = inf_norm(a);
    if (inf_norm(a - a.transpose()) > 1e-12 * std::max(scale, 1.0))
        throw InvalidMatrix("sym_eig: matrix is not symmetric");

    Mat s = 0.5 * (a + a.transpose());
    Mat v = Mat::Identity(n, n);

    // Cyclic Jacobi sweeps. Dimensions stay small (<= ~20) so the O(n^3)
    // per-sweep cost is irrelevant; accuracy is what matters.
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
        if (std::sqrt(off) <= 1e-15 * std::max(scale, 1e-300)) break;

        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = s(p, q);
                if (std::abs(apq) <= 1e-18 * std::max(scale, 1e-300)) continue;
                const double app = s(p, p);
                const double aqq = s(q, q);
                const double tau = (aqq - app) / (2.0 * apq);
                double t;
                if (tau >= 0.0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * c;

                for (Eigen::Index k = 0; k < n; ++k) {
                    const double skp = s(k, p), skq = s(k, q);
                    s(k, p) = c * skp - sn * skq;
                    s(k, q) = sn * skp + c * skq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double spk = s(p, k), sqk = s(q, k);
                    s(p, k) = c * spk - sn * sqk;
                    s(q, k) = sn * spk + c * sqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
    }

    // Sort descending (stable in the original index order for ties).
    std::vector<Eigen::Index> idx(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index i, Eigen::Index j) {
        return s(i, i) > s(j, j);
    });

    SymEig out;
    out.eigenvalues = Vec(n);
    out.eigenvectors = Mat(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        out.eigenvalues(c) = s(idx[static_cast<size_t>(c)], idx[static_cast<size_t>(c)]);
        out.eigenvectors.col(c) = v.col(idx[static_cast<size_t>(c)]);
    }
    fix_eigvec_signs(out.eigenvectors);
    return out;
}

Mat linsolve(const Mat& a, const Mat& b) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n) throw SingularSystem("linsolve: matrix must be square");
    if (b.rows() != n) throw DimensionMismatch("linsolve: rhs row count mismatch");

    Eigen::FullPivLU<Mat> lu(a);
    if (!lu.isInvertible())
        throw SingularSystem("linsolve: matrix is singular");
    // Condition estimate via explicit inverse; fine at these dimensions.
    const Mat ainv = lu.inverse();
    const double cond = a.cwiseAbs().rowwise().sum().maxCoeff() *
                        ainv.cwiseAbs().rowwise().sum().maxCoeff();
    if (!(cond < 1e12))
        throw SingularSystem("linsolve: condition estimate " + std::to_string(cond) +
                             " exceeds 1e12");
    return lu.solve(b);
}

Mat solve_lyapunov(const Mat& a, const Mat& q) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n || q.rows() != n || q.cols() != n)
        throw DimensionMismatch("solve_lyapunov: dimension mismatch");
    // vec(A'P + PA) = (I (x) A' + A' (x) I) vec(P)
    Mat m = Mat::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k) {
                m(i + j * n, k + j * n) += a(k, i); // (I (x) A')
                m(i + j * n, i + k * n) += a(k, j); // (A' (x) I)
            }
    Vec rhs(n * n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) rhs(i + j * n) = -q(i, j);
    Eigen::PartialPivLU<Mat> lu(m);
    Vec x = lu.solve(rhs);
    Mat p(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) p(i, j) = x(i + j * n);
    return 0.5 * (p + p.transpose());
}

bool is_hurwitz(const Mat& a, double tol) {
    Eigen::EigenSolver<Mat> es(a, /*computeEigenvectors=*/false);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        if (es.eigenvalues()(i).real() >= -tol) return false;
    return true;
}

CareSolution solve_care(const Mat& a, const Mat& b, const Mat& q, const Mat& r) {
    const Eigen::Index n = a.rows();
    const Eigen::Index m = b.cols();
    if (a.cols() != n || b.rows() != n || q.rows() != n || q.cols() != n ||
        r.rows() != m || r.cols() != m)
        throw DimensionMismatch("solve_care: dimension mismatch");

    Eigen::LLT<Mat> rchol(r);
    if (rchol.info() != Eigen::Success)
        throw RiccatiFailure("solve_care: R is not positive-definite");
    const Mat rinv_bt = rchol.solve(b.transpose());
    const Mat g = b * rinv_bt; // B R^-1 B'

    Mat ham(2 * n, 2 * n);
    ham.topLeftCorner(n, n) = a;
    ham.topRightCorner(n, n) = -g;
    ham.bottomLeftCorner(n, n) = -q;
    ham.bottomRightCorner(n, n) = -a.transpose();

    Eigen::EigenSolver<Mat> es(ham);
    if (es.info() != Eigen::Success)
        throw RiccatiFailure("solve_care: Hamiltonian eigendecomposition failed");

    const double scale = std::max({inf_norm(a), inf_norm(g), inf_norm(q), 1.0});
    std::vector<Eigen::Index> stable;
    for (Eigen::Index i = 0; i < 2 * n; ++i)
        if (es.eigenvalues()(i).real() < -1e-9 * scale) stable.push_back(i);
    if (static_cast<Eigen::Index>(stable.size()) != n)
        throw RiccatiFailure("solve_care: Hamiltonian has " +
                             std::to_string(stable.size()) +
                             " strictly stable eigenvalues, expected " + std::to_string(n) +
                             " (pair may not be stabilizable)");

    Eigen::MatrixXcd u1(n, n), u2(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        u1.col(c) = es.eigenvectors().col(stable[static_cast<size_t>(c)]).head(n);
        u2.col(c) = es.eigenvectors().col(stable[static_cast<size_t>(c)]).tail(n);
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(u1);
    if (!lu.isInvertible())
        throw RiccatiFailure("solve_care: stable subspace basis is degenerate");
    Mat p = (u2 * lu.inverse()).real();
    p = 0.5 * (p + p.transpose());

    // Newton (Kleinman) refinement: quadratic cleanup of the subspace solution.
    for (int it = 0; it < 25; ++it) {
        const Mat k = rchol.solve(b.transpose() * p);
        const Mat ac = a - b * k;
        const Mat rhs = q + k.transpose() * r * k;
        Mat pn;
        try {
            pn = solve_lyapunov(ac, rhs);
        } catch (const Error&) {
            break; // keep current iterate
        }
        const double dp = inf_norm(pn - p);
        p = pn;
        if (dp <= 1e-13 * std::max(inf_norm(p), 1.0)) break;
    }

    CareSolution sol;
    sol.p = p;
    sol.k = rchol.solve(b.transpose() * p);

    const Mat residual =
        a.transpose() * p + p * a - p * g * p + q;
    const double bound = 1e-9 * std::max(inf_norm(q), 1e-12 * scale);
    if (inf_norm(residual) > bound)
        throw RiccatiFailure("solve_care: residual " + std::to_string(inf_norm(residual)) +
                             " exceeds bound " + std::to_string(bound));
    if (!is_hurwitz(a - b * sol.k, 0.0))
        throw RiccatiFailure("solve_care: closed loop is not Hurwitz");
    return sol;
}

} // namespace gaintune
