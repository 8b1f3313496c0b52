// glauber.hpp: Quantum Glauber spin chain: flip operators F^(eps mu) and their structure maps
//
// Sites are numbered 1..n; site 1 is the leftmost Kronecker factor and spin +
// is basis state |0>. The flip term at site r is
//   F^(eps mu)_r = sum_{s = +-} P^(eps s)_{r-1} (x) |s><-s|_r (x) P^(mu s)_{r+1},
// so (eps, mu) are the neighbour orientations relative to the new centre value.
// With this reading F^(++)_r is exactly the two-term display (up-up neighbours
// around a spin flipped up, down-down neighbours around a spin flipped down)
// and F^(eps mu)* = F^(-eps, -mu).

#pragma once

#include <array>
#include <string_view>

#include "qmf/operator_algebra.hpp"
#include "qmf/random.hpp"
#include "qmf/structure_maps.hpp"

namespace qmf {

enum class Boundary { periodic, open };

// Neighbour configuration (left, right): pp = (+,+), pm = (+,-), mp = (-,+), mm = (-,-).
enum class Configuration { pp = 0, pm = 1, mp = 2, mm = 3 };

inline constexpr std::array<Configuration, 4> kConfigurations{
    Configuration::pp, Configuration::pm, Configuration::mp, Configuration::mm};

std::string_view label(Configuration c);
Configuration parse_configuration(std::string_view text);
Configuration configuration_of(int eps, int mu);
int left_sign(Configuration c);
int right_sign(Configuration c);

std::string_view to_string(Boundary b);
Boundary parse_boundary(std::string_view text);

struct GlauberConfig {
    static constexpr int kMaxSites = 6;

    int sites = 3;
    Boundary boundary = Boundary::periodic;
    // (g|g)^+ and (g|g)^-, indexed by Configuration.
    std::array<Complex, 4> gg_plus{};
    std::array<Complex, 4> gg_minus{};

    Complex plus(Configuration c) const { return gg_plus[static_cast<std::size_t>(c)]; }
    Complex minus(Configuration c) const { return gg_minus[static_cast<std::size_t>(c)]; }
    Index hilbert_dim() const { return Index{1} << sites; }

    // Throws ConfigError for n outside [3, 6] or a constant with negative real part.
    void validate() const;
};

// Seeded constants: real parts in [0, 1), imaginary parts in [-1, 1), except
// Re (g|g)^-_(++) which is drawn from [0.5, 1.5) so that the calibrated Ito
// coefficient c_mp = 2 Re (g|g)^-_(++) is at least one.
GlauberConfig random_glauber_config(Rng& rng, int sites, Boundary boundary);

Operator build_site_operator(const GlauberConfig& cfg, int site, int eps, int mu);
// Sum over all sites (periodic) or interior sites (open).
Operator build_F_lambda(const GlauberConfig& cfg, int eps, int mu);

// theta_1 = -i[., F], theta_-1 = -i[., F*] with F = F^(++)_Lambda;
// theta_0 = Hamiltonian part sum_{eps mu} Im (g|g)^-  [., F*F] / Im (g|g)^+ [., FF*]
//           plus dissipators weighted by Re (g|g)^-_(++) and Re (g|g)^+_(++).
StructureMapSet build_glauber_structure_maps(const GlauberConfig& cfg);

// Same construction without validate(); only for detector tests that need
// deliberately inadmissible constants. Negative real parts flip the sign of the
// corresponding dissipator.
StructureMapSet build_glauber_structure_maps_unchecked(const GlauberConfig& cfg);

} // namespace qmf
