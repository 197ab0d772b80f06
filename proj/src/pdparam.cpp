#include "gaintune/pdparam.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace gaintune {

namespace {

int dim_from_angle_count(Eigen::Index m) {
    // m = n(n-1)/2  =>  n = (1 + sqrt(1+8m))/2
    const double nf = 0.5 * (1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(m)));
    const int n = static_cast<int>(std::lround(nf));
    if (n < 1 || static_cast<Eigen::Index>(n) * (n - 1) / 2 != m)
        throw DimensionMismatch("parameter count " + std::to_string(m) +
                                " is not N(N-1)/2 for any N");
    return n;
}

// Orthonormal basis of the orthogonal complement of `cols`, built by
// completing with standard basis vectors (modified Gram-Schmidt, one
// re-orthogonalization pass, drop threshold 1e-10).
Mat complement_basis(const std::vector<Vec>& cols, int n) {
    std::vector<Vec> basis = cols;
    std::vector<Vec> fresh;
    for (int k = 0; k < n && static_cast<int>(basis.size()) < n; ++k) {
        Vec w = Vec::Zero(n);
        w(k) = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& b : basis) w -= b.dot(w) * b;
        const double nrm = w.norm();
        if (nrm > 1e-10) {
            w /= nrm;
            basis.push_back(w);
            fresh.push_back(w);
        }
    }
    if (static_cast<int>(cols.size() + fresh.size()) != n)
        throw InvalidMatrix("complement_basis: failed to complete basis");
    Mat b(n, static_cast<Eigen::Index>(fresh.size()));
    for (Eigen::Index c = 0; c < b.cols(); ++c) b.col(c) = fresh[static_cast<size_t>(c)];
    return b;
}

// Unit vector in spherical coordinates: (cos t1, sin t1 cos t2, ...,
// prod sin * cos t_{L-1}, prod sin). Zero angles give the first basis vector.
Vec spherical_unit(const Vec& theta) {
    const Eigen::Index len = theta.size() + 1;
    Vec v(len);
    double sin_prod = 1.0;
    for (Eigen::Index k = 0; k < len - 1; ++k) {
        v(k) = sin_prod * std::cos(theta(k));
        sin_prod *= std::sin(theta(k));
    }
    v(len - 1) = sin_prod;
    return v;
}

double det_sign(const Mat& q) {
    return Eigen::FullPivLU<Mat>(q).determinant() < 0.0 ? -1.0 : 1.0;
}

int direct_symmetric_count(int n) { return (n * n + n) / 2; }

} // namespace

const char* kind_name(PenaltyKind k) {
    switch (k) {
        case PenaltyKind::Diagonal: return "diagonal";
        case PenaltyKind::EigenGEAGSP: return "eigen-geagsp";
        case PenaltyKind::EigenCayley: return "eigen-cayley";
        case PenaltyKind::EigenGivens: return "eigen-givens";
        case PenaltyKind::DirectSymmetric: return "direct-symmetric";
    }
    return "?";
}

PenaltyKind kind_from_name(const std::string& name) {
    if (name == "diagonal" || name == "diag") return PenaltyKind::Diagonal;
    if (name == "eigen-geagsp" || name == "full") return PenaltyKind::EigenGEAGSP;
    if (name == "eigen-cayley") return PenaltyKind::EigenCayley;
    if (name == "eigen-givens") return PenaltyKind::EigenGivens;
    if (name == "direct-symmetric") return PenaltyKind::DirectSymmetric;
    throw ConfigError("unknown penalty kind '" + name + "'");
}

int param_count(PenaltyKind kind, int n) {
    const int m = n * (n - 1) / 2;
    switch (kind) {
        case PenaltyKind::Diagonal: return n;
        case PenaltyKind::EigenGEAGSP:
        case PenaltyKind::EigenCayley:
        case PenaltyKind::EigenGivens: return n + m;
        case PenaltyKind::DirectSymmetric: return direct_symmetric_count(n);
    }
    return 0;
}

Mat ortho_geagsp(const Vec& angles) {
    const int n = dim_from_angle_count(angles.size());
    std::vector<Vec> cols;
    cols.reserve(static_cast<size_t>(n));
    Eigen::Index offset = 0;
    for (int i = 1; i <= n; ++i) {
        const int len = n - i + 1;
        const Mat basis = (i == 1) ? Mat::Identity(n, n) : complement_basis(cols, n);
        Vec v = basis * spherical_unit(angles.segment(offset, len - 1));
        v /= v.norm();
        cols.push_back(v);
        offset += len - 1;
    }
    Mat q(n, n);
    for (int c = 0; c < n; ++c) q.col(c) = cols[static_cast<size_t>(c)];
    // Fix the angle-free last column so det(Q) = +1; K = Q L Q' does not
    // care, but it pins the 2-D case to the cos/-sin/sin/cos form.
    if (det_sign(q) < 0.0) q.col(n - 1) *= -1.0;
    return q;
}

Mat ortho_cayley(const Vec& skew_params) {
    const int n = dim_from_angle_count(skew_params.size());
    Mat x = Mat::Zero(n, n);
    Eigen::Index k = 0;
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            x(i, j) = skew_params(k);
            x(j, i) = -skew_params(k);
            ++k;
        }
    const Mat eye = Mat::Identity(n, n);
    // (I+X)(I-X)^-1 = (I-X)^-1 (I+X); I-X is nonsingular for real skew X.
    return linsolve(eye - x, eye + x);
}

Mat ortho_givens(const Vec& angles) {
    const int n = dim_from_angle_count(angles.size());
    Mat q = Mat::Identity(n, n);
    Eigen::Index k = 0;
    for (int i = 2; i <= n; ++i)
        for (int j = 1; j < i; ++j) {
            const double c = std::cos(angles(k));
            const double s = std::sin(angles(k));
            ++k;
            Mat g = Mat::Identity(n, n);
            g(i - 1, i - 1) = c;
            g(j - 1, j - 1) = c;
            g(j - 1, i - 1) = s;  // row j, column i
            g(i - 1, j - 1) = -s;
            q = q * g.transpose();
        }
    return q;
}

Mat assemble(const PenaltyParams& params) {
    const int n = params.dimension;
    if (n < 1) throw DimensionMismatch("assemble: dimension must be >= 1");
    if (params.values.size() != param_count(params.kind, n))
        throw DimensionMismatch("assemble: expected " +
                                std::to_string(param_count(params.kind, n)) +
                                " values, got " + std::to_string(params.values.size()));

    switch (params.kind) {
        case PenaltyKind::Diagonal: {
            for (int i = 0; i < n; ++i)
                if (!(params.values(i) > 0.0))
                    throw NotPositiveDefinite("assemble: diagonal entry " + std::to_string(i) +
                                              " is not strictly positive");
            return Mat(params.values.asDiagonal());
        }
        case PenaltyKind::EigenGEAGSP:
        case PenaltyKind::EigenCayley:
        case PenaltyKind::EigenGivens: {
            const Vec lambda = params.values.head(n);
            for (int i = 0; i < n; ++i)
                if (!(lambda(i) > 0.0))
                    throw NotPositiveDefinite("assemble: eigenvalue " + std::to_string(i) +
                                              " is not strictly positive");
            const Vec phi = params.values.tail(params.values.size() - n);
            Mat q;
            if (params.kind == PenaltyKind::EigenGEAGSP) q = ortho_geagsp(phi);
            else if (params.kind == PenaltyKind::EigenCayley) q = ortho_cayley(phi);
            else q = ortho_givens(phi);
            Mat k = q * lambda.asDiagonal() * q.transpose();
            return 0.5 * (k + k.transpose());
        }
        case PenaltyKind::DirectSymmetric: {
            Mat k(n, n);
            Eigen::Index idx = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    k(i, j) = params.values(idx);
                    k(j, i) = params.values(idx);
                    ++idx;
                }
            const SymEig e = sym_eig(k);
            if (!(e.eigenvalues(n - 1) > 0.0))
                throw NotPositiveDefinite("assemble: direct symmetric matrix has eigenvalue " +
                                          std::to_string(e.eigenvalues(n - 1)));
            return k;
        }
    }
    throw DimensionMismatch("assemble: unreachable kind");
}

Bounds bounds_for(PenaltyKind kind, int n, double eig_lo, double eig_hi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const int count = param_count(kind, n);
    Bounds b;
    b.lower = Vec::Zero(count);
    b.upper = Vec::Zero(count);
    const int m = n * (n - 1) / 2;
    switch (kind) {
        case PenaltyKind::Diagonal:
            b.lower.setConstant(eig_lo);
            b.upper.setConstant(eig_hi);
            break;
        case PenaltyKind::EigenGEAGSP:
        case PenaltyKind::EigenGivens:
            b.lower.head(n).setConstant(eig_lo);
            b.upper.head(n).setConstant(eig_hi);
            b.lower.tail(m).setConstant(0.0);
            b.upper.tail(m).setConstant(two_pi);
            break;
        case PenaltyKind::EigenCayley:
            b.lower.head(n).setConstant(eig_lo);
            b.upper.head(n).setConstant(eig_hi);
            b.lower.tail(m).setConstant(-10.0);
            b.upper.tail(m).setConstant(10.0);
            break;
        case PenaltyKind::DirectSymmetric: {
            Eigen::Index idx = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    if (i == j) {
                        b.lower(idx) = eig_lo;
                        b.upper(idx) = eig_hi;
                    } else {
                        b.lower(idx) = -eig_hi;
                        b.upper(idx) = eig_hi;
                    }
                    ++idx;
                }
            break;
        }
    }
    return b;
}

} // namespace gaintune
