// glauber.cpp: Glauber flip operators and structure maps on a finite chain

#include "qmf/glauber.hpp"

#include <string>
#include <vector>

#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include "qmf/errors.hpp"

namespace qmf {

namespace {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

SparseMatrix single_entry(Index row, Index col)
{
    SparseMatrix m(2, 2);
    m.insert(row, col) = 1.0;
    return m;
}

// Spin + is basis index 0.
Index spin_index(int s) { return s > 0 ? 0 : 1; }

SparseMatrix projector(int s) { return single_entry(spin_index(s), spin_index(s)); }

// |s><-s|
SparseMatrix flip_to(int s) { return single_entry(spin_index(s), spin_index(-s)); }

SparseMatrix sparse_identity(Index n)
{
    SparseMatrix m(n, n);
    m.setIdentity();
    return m;
}

SparseMatrix kron_chain(const std::vector<SparseMatrix>& factors)
{
    SparseMatrix acc = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) {
        SparseMatrix next = Eigen::kroneckerProduct(acc, factors[k]);
        acc = std::move(next);
    }
    return acc;
}

void require_sign(int v, const char* what)
{
    if (v != 1 && v != -1) {
        throw ParameterError(std::string(what) + " must be +1 or -1");
    }
}

bool has_both_neighbours(const GlauberConfig& cfg, int site)
{
    return cfg.boundary == Boundary::periodic || (site > 1 && site < cfg.sites);
}

struct GlauberPieces {
    Operator hamiltonian;
    Operator coupling;
    double w_minus;
    double w_plus;
    ItoTable prior;
};

GlauberPieces glauber_pieces(const GlauberConfig& cfg)
{
    const Index d = cfg.hilbert_dim();
    Matrix h = Matrix::Zero(d, d);
    for (const auto c : kConfigurations) {
        const Operator f = build_F_lambda(cfg, left_sign(c), right_sign(c));
        const Matrix& fm = f.matrix();
        h += cfg.minus(c).imag() * (fm.adjoint() * fm) - cfg.plus(c).imag() * (fm * fm.adjoint());
    }
    const auto pp = Configuration::pp;
    // dB dB* = Re (g|g)^+_(++) dt, dB* dB = Re (g|g)^-_(++) dt as displayed for the model;
    // used only as the prior of the calibration.
    ItoTable prior{Complex(cfg.plus(pp).real()), Complex(cfg.minus(pp).real())};
    return {Operator(0.5 * (h + h.adjoint())), build_F_lambda(cfg, 1, 1), cfg.minus(pp).real(),
            cfg.plus(pp).real(), prior};
}

} // namespace

std::string_view label(Configuration c)
{
    switch (c) {
    case Configuration::pp: return "pp";
    case Configuration::pm: return "pm";
    case Configuration::mp: return "mp";
    case Configuration::mm: return "mm";
    }
    return "pp";
}

Configuration parse_configuration(std::string_view text)
{
    for (const auto c : kConfigurations) {
        if (label(c) == text) return c;
    }
    throw ConfigError("configuration", "unknown label '" + std::string(text) + "'");
}

Configuration configuration_of(int eps, int mu)
{
    require_sign(eps, "eps");
    require_sign(mu, "mu");
    if (eps > 0) return mu > 0 ? Configuration::pp : Configuration::pm;
    return mu > 0 ? Configuration::mp : Configuration::mm;
}

int left_sign(Configuration c)
{
    return (c == Configuration::pp || c == Configuration::pm) ? 1 : -1;
}

int right_sign(Configuration c)
{
    return (c == Configuration::pp || c == Configuration::mp) ? 1 : -1;
}

std::string_view to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "open"; }

Boundary parse_boundary(std::string_view text)
{
    if (text == "periodic") return Boundary::periodic;
    if (text == "open") return Boundary::open;
    throw ConfigError("boundary", "expected 'periodic' or 'open', got '" + std::string(text) + "'");
}

void GlauberConfig::validate() const
{
    if (sites < 3 || sites > kMaxSites) {
        throw ConfigError("sites", "must lie in [3, " + std::to_string(kMaxSites) + "], got " +
                                       std::to_string(sites));
    }
    for (const auto c : kConfigurations) {
        if (plus(c).real() < 0.0) {
            throw ConfigError("gg_plus." + std::string(label(c)), "real part must be non-negative");
        }
        if (minus(c).real() < 0.0) {
            throw ConfigError("gg_minus." + std::string(label(c)), "real part must be non-negative");
        }
    }
}

GlauberConfig random_glauber_config(Rng& rng, int sites, Boundary boundary)
{
    GlauberConfig cfg;
    cfg.sites = sites;
    cfg.boundary = boundary;
    for (std::size_t k = 0; k < 4; ++k) {
        const double re_p = uniform(rng, 0.0, 1.0);
        const double im_p = uniform(rng, -1.0, 1.0);
        cfg.gg_plus[k] = Complex(re_p, im_p);
        const double re_m = k == static_cast<std::size_t>(Configuration::pp) ? uniform(rng, 0.5, 1.5)
                                                                           : uniform(rng, 0.0, 1.0);
        const double im_m = uniform(rng, -1.0, 1.0);
        cfg.gg_minus[k] = Complex(re_m, im_m);
    }
    return cfg;
}

Operator build_site_operator(const GlauberConfig& cfg, int site, int eps, int mu)
{
    require_sign(eps, "eps");
    require_sign(mu, "mu");
    const int n = cfg.sites;
    if (n < 3 || n > GlauberConfig::kMaxSites) {
        throw ParameterError("chain length must lie in [3, 6]");
    }
    if (site < 1 || site > n) {
        throw ParameterError("site " + std::to_string(site) + " outside 1.." + std::to_string(n));
    }
    if (!has_both_neighbours(cfg, site)) {
        throw ParameterError("open chain: boundary site " + std::to_string(site) + " has no flip term");
    }
    const auto left = static_cast<std::size_t>((site - 2 + n) % n);
    const auto centre = static_cast<std::size_t>(site - 1);
    const auto right = static_cast<std::size_t>(site % n);

    const Index d = cfg.hilbert_dim();
    SparseMatrix total(d, d);
    for (const int s : {1, -1}) {
        std::vector<SparseMatrix> factors(static_cast<std::size_t>(n), sparse_identity(2));
        factors[left] = projector(eps * s);
        factors[centre] = flip_to(s);
        factors[right] = projector(mu * s);
        total += kron_chain(factors);
    }
    return Operator(Matrix(total));
}

Operator build_F_lambda(const GlauberConfig& cfg, int eps, int mu)
{
    Operator sum = Operator::zero(cfg.hilbert_dim());
    for (int r = 1; r <= cfg.sites; ++r) {
        if (has_both_neighbours(cfg, r)) {
            sum += build_site_operator(cfg, r, eps, mu);
        }
    }
    return sum;
}

StructureMapSet build_glauber_structure_maps(const GlauberConfig& cfg)
{
    cfg.validate();
    const auto p = glauber_pieces(cfg);
    return build_evans_hudson(p.hamiltonian, p.coupling, p.w_minus, p.w_plus, p.prior);
}

StructureMapSet build_glauber_structure_maps_unchecked(const GlauberConfig& cfg)
{
    const auto p = glauber_pieces(cfg);
    const auto& f = p.coupling;
    SuperOperator theta_zero = commutator_map(p.hamiltonian) +
                               Complex(p.w_minus) * dissipator_map(f, 1.0) +
                               Complex(p.w_plus) * mirrored_dissipator_map(f, 1.0);
    StructureMapSet sm(commutator_map(f.adjoint()), std::move(theta_zero), commutator_map(f), p.prior);
    return sm.calibrated();
}

} // namespace qmf
