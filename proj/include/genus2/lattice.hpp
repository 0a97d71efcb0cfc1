#pragma once

#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "fock.hpp"
#include "partition.hpp"
#include "sewing.hpp"

namespace genus2 {

using IntVec = Eigen::VectorXi;
using IntMat = Eigen::MatrixXi;

class EvenLattice {
public:
    EvenLattice(IntMat gram, std::string name = "") : gram_(std::move(gram)), name_(std::move(name))
    {
        int l = rank();
        if (gram_.cols() != l) throw std::invalid_argument("gram matrix must be square");
        for (int i = 0; i < l; ++i) {
            if (gram_(i, i) % 2) throw std::invalid_argument("lattice is not even");
            for (int j = 0; j < l; ++j)
                if (gram_(i, j) != gram_(j, i)) throw std::invalid_argument("gram matrix is not symmetric");
        }
        Eigen::MatrixXd g = gram_.cast<double>();
        for (int m = 1; m <= l; ++m)
            if (!(g.topLeftCorner(m, m).determinant() > 0))
                throw std::invalid_argument("gram matrix is not positive definite");
        if (l > 0) chol_ = g.llt().matrixL();
    }

    static EvenLattice from_json(const nlohmann::json& j)
    {
        auto rows = j.at("gram");
        IntMat g(rows.size(), rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) throw std::invalid_argument("gram matrix must be square");
            for (std::size_t k = 0; k < rows.size(); ++k) g(i, k) = rows[i][k].get<int>();
        }
        return EvenLattice(g, j.value("name", ""));
    }

    static EvenLattice load(const std::string& path)
    {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open lattice file " + path);
        return from_json(nlohmann::json::parse(in));
    }

    int rank() const { return static_cast<int>(gram_.rows()); }
    const IntMat& gram() const { return gram_; }
    const std::string& name() const { return name_; }

    long long pair(const IntVec& a, const IntVec& b) const
    {
        return (a.transpose() * gram_ * b)(0, 0);
    }
    long long norm(const IntVec& a) const { return pair(a, a); }

    // Coordinates of a in an orthonormal basis of C (x) L: (a_i, a) = (L^T a)_i with gram = L L^T.
    Eigen::VectorXd orthonormal(const IntVec& a) const { return chol_.transpose() * a.cast<double>(); }

private:
    IntMat gram_;
    std::string name_;
    Eigen::MatrixXd chol_;
};

// All a with (a, a) <= max_norm, by Fincke-Pohst bounds.
inline std::vector<IntVec> enumerate_vectors(const EvenLattice& L, long long max_norm)
{
    int l = L.rank();
    std::vector<IntVec> out;
    if (max_norm < 0) return out;
    if (l == 0) {
        out.push_back(IntVec(0));
        return out;
    }
    // (x, x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    Eigen::MatrixXd q = L.gram().cast<double>();
    for (int i = 0; i < l; ++i) {
        for (int j = i + 1; j < l; ++j) {
            q(j, i) = q(i, j);
            q(i, j) /= q(i, i);
        }
        for (int k = i + 1; k < l; ++k)
            for (int j = k; j < l; ++j) q(k, j) -= q(k, i) * q(i, j);
    }
    IntVec x = IntVec::Zero(l);
    double bound = double(max_norm) + 1e-9;
    std::function<void(int, double)> rec = [&](int i, double remaining) {
        double centre = 0;
        for (int j = i + 1; j < l; ++j) centre -= q(i, j) * x(j);
        double r = std::sqrt(std::max(remaining, 0.0) / q(i, i));
        int lo = static_cast<int>(std::ceil(centre - r - 1e-12)), hi = static_cast<int>(std::floor(centre + r + 1e-12));
        for (int v = lo; v <= hi; ++v) {
            x(i) = v;
            double t = v - centre;
            double rem = remaining - q(i, i) * t * t;
            if (rem < -1e-9) continue;
            if (i == 0) {
                if (L.norm(x) <= max_norm) out.push_back(x);
            } else {
                rec(i - 1, rem);
            }
        }
        x(i) = 0;
    };
    rec(l - 1, bound);
    return out;
}

inline double min_eigenvalue_imag(const Mat2& omega)
{
    Eigen::Matrix2d im;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) im(i, j) = omega(i, j).imag();
    return Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(im).eigenvalues()(0);
}

// pi i ((a,a) O11 + 2 (a,b) O12 + (b,b) O22)
inline cplx theta_exponent(long long aa, long long ab, long long bb, const Mat2& omega)
{
    return I * pi * (double(aa) * omega(0, 0) + 2.0 * double(ab) * omega(0, 1) + double(bb) * omega(1, 1));
}

struct ThetaValue {
    cplx value;
    // derivatives in Omega_11, Omega_12 (as one symmetric variable), Omega_22
    cplx d11, d12, d22;
    long long norm_cutoff = 0;
    long long n_terms = 0;
    double tail_bound = 0;
};

// sum over a with (a,a) > cutoff of exp(-pi lam (a,a)), with an analytic remainder
inline double gaussian_shell_tail(const EvenLattice& L, long long cutoff, double lam)
{
    int l = L.rank();
    if (l == 0) return 0;
    long long extra = static_cast<long long>(std::ceil(80.0 / (pi * lam))) + 2;
    long long top = cutoff + extra;
    double s = 0;
    for (const auto& a : enumerate_vectors(L, top)) {
        long long n = L.norm(a);
        if (n > cutoff) s += std::exp(-pi * lam * double(n));
    }
    // #{(a,a) <= n} <= (2 sqrt(n / mu) + 1)^l, mu the least eigenvalue of the gram matrix
    double mu = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(L.gram().cast<double>()).eigenvalues()(0);
    for (long long n = top + 1;; ++n) {
        double t = std::pow(2 * std::sqrt(double(n) / mu) + 1, l) * std::exp(-pi * lam * double(n));
        s += t;
        if (t < 1e-30) break;
    }
    return s;
}

inline ThetaValue siegel_theta(const EvenLattice& L, const Mat2& omega, long long cutoff = 12)
{
    double lam = min_eigenvalue_imag(omega);
    if (!(lam > 0)) throw domain_error("divergent tail");
    ThetaValue out;
    out.norm_cutoff = cutoff;
    auto vecs = enumerate_vectors(L, cutoff);
    std::vector<long long> norms;
    for (const auto& v : vecs) norms.push_back(L.norm(v));
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = 0; j < vecs.size(); ++j) {
            long long ab = L.pair(vecs[i], vecs[j]);
            cplx e = std::exp(theta_exponent(norms[i], ab, norms[j], omega));
            out.value += e;
            out.d11 += I * pi * double(norms[i]) * e;
            out.d12 += 2.0 * I * pi * double(ab) * e;
            out.d22 += I * pi * double(norms[j]) * e;
            ++out.n_terms;
        }
    double all = 0;
    for (long long n : norms) all += std::exp(-pi * lam * double(n));
    double tail = gaussian_shell_tail(L, cutoff, lam);
    out.tail_bound = 2 * tail * (all + tail);
    return out;
}

// Z^(2)_{M^l}(pt) theta_L(Omega(pt))
inline cplx z2_lattice(const SewingPoint& p, const EvenLattice& L, int K = default_K, long long cutoff = 12)
{
    SewingSystem s(p, K);
    return heisenberg_Z2(p, K, L.rank()).value * siegel_theta(L, s.omega(), cutoff).value;
}

// End-node weights xi_{alpha,beta}(k, a) in each orthonormal direction i, built from
// C(k,0) and D(k,0,+-w). Row i holds the vector over (k, a).
inline std::vector<RowVec> end_node_weights(const SewingSystem& s, const EvenLattice& L, const IntVec& alpha,
                                            const IntVec& beta)
{
    const Torus& t = s.torus();
    cplx w = s.point().w;
    Eigen::VectorXd al = L.orthonormal(alpha), be = L.orthonormal(beta);
    std::vector<RowVec> out;
    for (int i = 0; i < L.rank(); ++i) {
        RowVec xi(s.dim());
        for (int k = 1; k <= s.K(); ++k) {
            cplx pre = s.rho_pow_half(k) / std::sqrt(double(k));
            cplx lead = k == 1 ? cplx(al(i)) : cplx(0.0);
            xi(SewingSystem::index(k, 1)) = pre * (lead + t.C(k, 0) * be(i) - t.D(k, 0, w) * be(i));
            xi(SewingSystem::index(k, 2)) = pre * (lead - t.C(k, 0) * be(i) + t.D(k, 0, -w) * be(i));
        }
        out.push_back(xi);
    }
    return out;
}

// swap the (k,1) and (k,2) entries
inline RowVec swap_sheets(const RowVec& v)
{
    RowVec out(v.size());
    for (int i = 0; i + 1 < v.size(); i += 2) {
        out(i) = v(i + 1);
        out(i + 1) = v(i);
    }
    return out;
}

// pi i [(a,a) tau + 2 (a,b) w / 2 pi i + (b,b) log(-rho / K^2) / 2 pi i]
inline cplx lattice_prefactor_exponent(const SewingSystem& s, long long aa, long long ab, long long bb)
{
    return I * pi * double(aa) * s.point().tau + double(ab) * s.point().w + 0.5 * double(bb) * s.log_term();
}

// (1/2) sum over necklaces of gamma(N): -(1/2) sum_i xi_i(.,abar) (I - R)^{-1} xi_i(.,b)^T.
inline cplx necklace_exponent(const SewingSystem& s, const EvenLattice& L, const IntVec& alpha, const IntVec& beta)
{
    cplx total = 0;
    for (const RowVec& xi : end_node_weights(s, L, alpha, beta))
        total += (swap_sheets(xi) * s.resolvent() * xi.transpose())(0, 0);
    return -0.5 * total;
}

struct ExponentIdentity {
    cplx from_necklaces; // prefactor + (1/2) sum gamma(N)
    cplx from_omega;     // pi i Q(alpha, beta, Omega)
    cplx residual;       // reduced mod 2 pi i
};

inline ExponentIdentity exponent_identity(const SewingSystem& s, const EvenLattice& L, const IntVec& alpha,
                                          const IntVec& beta)
{
    long long aa = L.norm(alpha), ab = L.pair(alpha, beta), bb = L.norm(beta);
    ExponentIdentity out;
    out.from_necklaces = lattice_prefactor_exponent(s, aa, ab, bb) + necklace_exponent(s, L, alpha, beta);
    out.from_omega = theta_exponent(aa, ab, bb, s.omega());
    cplx d = out.from_necklaces - out.from_omega;
    out.residual = d - two_pi_i * std::round(d.imag() / (2 * pi));
    return out;
}

// Z_{alpha,beta} assembled from the end-node weights and Z^(2)_{M^l}.
inline cplx z_alpha_beta_necklace(const SewingSystem& s, const EvenLattice& L, const IntVec& alpha,
                                  const IntVec& beta)
{
    long long aa = L.norm(alpha), ab = L.pair(alpha, beta), bb = L.norm(beta);
    cplx zm = heisenberg_Z2(s.point(), s.K(), L.rank()).value;
    return zm * std::exp(lattice_prefactor_exponent(s, aa, ab, bb) + necklace_exponent(s, L, alpha, beta));
}

// exp(pi i Q(alpha, beta, Omega)) Z^(2)_{M^l}
inline cplx z_alpha_beta_omega(const SewingSystem& s, const EvenLattice& L, const IntVec& alpha, const IntVec& beta)
{
    cplx zm = heisenberg_Z2(s.point(), s.K(), L.rank()).value;
    return zm * std::exp(theta_exponent(L.norm(alpha), L.pair(alpha, beta), L.norm(beta), s.omega()));
}

// Leading rho-coefficient of Z_{alpha,beta} / rho^{(b,b)/2} from the genus-one two-point function
// of e^beta, e^-beta with cocycle eps(b,-b) = (-1)^{(b,b)/2}:
// (-1)^{(b,b)/2} q^{(a,a)/2} exp((a,b) w) K(w)^{-(b,b)} eta^{-l}.
inline cplx z_alpha_beta_leading(const Torus& t, cplx w, const EvenLattice& L, const IntVec& alpha,
                                 const IntVec& beta)
{
    long long aa = L.norm(alpha), ab = L.pair(alpha, beta), bb = L.norm(beta);
    double eps = (bb / 2) % 2 ? -1.0 : 1.0;
    cplx k = t.prime_form(w).value;
    return eps * std::exp(I * pi * double(aa) * t.tau()) * std::exp(double(ab) * w) * std::pow(k, -double(bb)) *
           std::pow(1.0 / t.eta(), L.rank());
}

// Coefficients of rho^n, n = 0..n_max, of rho^{-(b,b)/2} Z_{alpha,beta}(rho) by either route.
inline std::vector<cplx> z_alpha_beta_rho_series(cplx tau, cplx w, const EvenLattice& L, const IntVec& alpha,
                                                 const IntVec& beta, int n_max, bool necklace_route,
                                                 int K = default_K, double radius = 0.02, int points = 64)
{
    long long half = L.norm(beta) / 2;
    return taylor_coefficients(
        [&](cplx rho) {
            SewingSystem s({tau, w, rho}, K);
            cplx z = necklace_route ? z_alpha_beta_necklace(s, L, alpha, beta) : z_alpha_beta_omega(s, L, alpha, beta);
            return z * std::pow(rho, -double(half));
        },
        radius, points, n_max + 1);
}

// nu_{i,alpha,beta}(x) = (a_i, alpha) nu_1(x) + (a_i, beta) nu_2(x)
inline cplx lattice_nu(const SewingSystem& s, const EvenLattice& L, const IntVec& alpha, const IntVec& beta, int i,
                       cplx x)
{
    return L.orthonormal(alpha)(i) * s.nu1(x) + L.orthonormal(beta)(i) * s.nu2(x);
}

// Sym_n(omega2, nu) Z_{alpha,beta}: sum over involutions of the insertion labels; a
// transposition (r s) contributes delta_{i_r i_s} omega2(x_r, x_s), a fixed point nu_{i_t}(x_t).
inline cplx lattice_npoint(const SewingSystem& s, const EvenLattice& L, const IntVec& alpha, const IntVec& beta,
                           const std::vector<int>& components, const std::vector<cplx>& xs)
{
    int n = static_cast<int>(xs.size());
    if (static_cast<int>(components.size()) != n) throw std::invalid_argument("one component index per point");
    for (int i = 0; i < n; ++i) {
        if (components[i] < 0 || components[i] >= L.rank()) throw std::invalid_argument("component out of range");
        for (int j = i + 1; j < n; ++j)
            if (std::abs(xs[i] - xs[j]) < 1e-9) throw domain_error("coincident points");
    }
    std::vector<cplx> nu(n);
    for (int i = 0; i < n; ++i) nu[i] = lattice_nu(s, L, alpha, beta, components[i], xs[i]);
    std::vector<bool> used(n, false);
    std::function<cplx()> rec = [&]() -> cplx {
        int first = -1;
        for (int i = 0; i < n; ++i)
            if (!used[i]) {
                first = i;
                break;
            }
        if (first < 0) return 1.0;
        used[first] = true;
        cplx total = nu[first] * rec();
        for (int j = first + 1; j < n; ++j) {
            if (used[j] || components[j] != components[first]) continue;
            used[j] = true;
            total += s.omega2(xs[first], xs[j]) * rec();
            used[j] = false;
        }
        used[first] = false;
        return total;
    };
    return rec() * z_alpha_beta_omega(s, L, alpha, beta);
}

inline cplx lattice_npoint_oneform(const SewingSystem& s, const EvenLattice& L, const IntVec& alpha,
                                   const IntVec& beta, int component, cplx x)
{
    return lattice_npoint(s, L, alpha, beta, {component}, {x});
}

struct WardResult {
    cplx lhs, rhs;
    double residual;
    double tail_bound;
};

// Left side: sum_{alpha,beta} ((1/2) sum_i nu_i^2 + (l/12) s2) exp(pi i Q).
// Right side: (D + (l/12) s2) theta with D = (1/2 pi i) sum_{a<=b} nu_a nu_b d/dOmega_ab.
inline WardResult ward_identity_check(const SewingSystem& s, const EvenLattice& L, cplx x, long long cutoff = 12)
{
    Mat2 omega = s.omega();
    cplx n1 = s.nu1(x), n2 = s.nu2(x), s2 = s.s2(x);
    double l = L.rank();
    auto vecs = enumerate_vectors(L, cutoff);
    WardResult out;
    for (const auto& a : vecs)
        for (const auto& b : vecs) {
            cplx sq = 0;
            for (int i = 0; i < L.rank(); ++i) {
                cplx v = lattice_nu(s, L, a, b, i, x);
                sq += v * v;
            }
            out.lhs += (0.5 * sq + l / 12.0 * s2) * std::exp(theta_exponent(L.norm(a), L.pair(a, b), L.norm(b), omega));
        }
    ThetaValue th = siegel_theta(L, omega, cutoff);
    out.rhs = (n1 * n1 * th.d11 + n1 * n2 * th.d12 + n2 * n2 * th.d22) / two_pi_i + l / 12.0 * s2 * th.value;
    out.residual = std::abs(out.lhs - out.rhs);
    out.tail_bound = th.tail_bound;
    return out;
}

// Same right side with d theta / d Omega_ab by central differences of theta itself.
inline cplx ward_rhs_finite_difference(const SewingSystem& s, const EvenLattice& L, cplx x, long long cutoff = 12,
                                       double h = 1e-4)
{
    Mat2 omega = s.omega();
    cplx n1 = s.nu1(x), n2 = s.nu2(x), s2 = s.s2(x);
    auto theta = [&](const Mat2& o) { return siegel_theta(L, o, cutoff).value; };
    auto deriv = [&](int i, int j) {
        // fourth-order stencil along the (symmetric) entry
        auto shifted = [&](double t) {
            Mat2 o = omega;
            o(i, j) += t;
            if (i != j) o(j, i) += t;
            return theta(o);
        };
        return (-shifted(2 * h) + 8.0 * shifted(h) - 8.0 * shifted(-h) + shifted(-2 * h)) / (12 * h);
    };
    return (n1 * n1 * deriv(0, 0) + n1 * n2 * deriv(0, 1) + n2 * n2 * deriv(1, 1)) / two_pi_i +
           double(L.rank()) / 12.0 * s2 * theta(omega);
}

} // namespace genus2
