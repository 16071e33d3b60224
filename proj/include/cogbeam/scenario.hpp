// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cogbeam/rng.hpp"
#include "cogbeam/types.hpp"

namespace cogbeam {

/// Link geometry, activity, power and timing for one CR/PR coexistence scenario.
/// Powers and noise levels are linear; t_block and tau_min are in symbols.
struct SystemConfig {
    int m_t = 6;  // CR-Tx antennas
    int m_r = 3;  // CR-Rx antennas
    int m_1 = 4;  // PR1 antennas
    int m_2 = 2;  // PR2 antennas
    int d_1 = 2;  // streams PR1 -> PR2
    int d_2 = 2;  // streams PR2 -> PR1
    double alpha_1 = 0.5;
    double alpha_2 = 0.5;
    double p_1 = 100.0;
    double p_2 = 100.0;
    double p_cr = 100.0;
    double rho_0 = 1.0;  // noise at CR-Tx and at the PR terminals
    double rho_1 = 1.0;  // noise at CR-Rx
    int t_block = 1000;
    int tau_min = 10;
};

/// Throws ConfigError naming the first offending key.
void validate(const SystemConfig& cfg);

/// Parses `key = value` lines (`#` starts a comment) on top of `base`. Unknown keys,
/// malformed values and invariant violations raise ConfigError.
SystemConfig parse_config(std::istream& in, const SystemConfig& base = {});
SystemConfig load_config(const std::string& path, const SystemConfig& base = {});
std::string format_config(const SystemConfig& cfg);

/// One channel realization. The reverse PR channel is f^H by reciprocity.
struct ChannelSet {
    CMatrix h;   // m_r x m_t, CR-Tx -> CR-Rx
    CMatrix g1;  // m_1 x m_t, CR-Tx -> PR1
    CMatrix g2;  // m_2 x m_t, CR-Tx -> PR2
    CMatrix f;   // m_2 x m_1, PR1 -> PR2
};

/// PR transmit beamformers a_j, receive beamformers b_j and covariances s_j = a_j a_j^H.
struct PrLinkDesign {
    CMatrix a1;  // m_1 x d_1
    CMatrix a2;  // m_2 x d_2
    CMatrix b1;  // d_2 x m_1, applied at PR1
    CMatrix b2;  // d_1 x m_2, applied at PR2
    CMatrix s1;
    CMatrix s2;

    int d1() const { return static_cast<int>(a1.cols()); }
    int d2() const { return static_cast<int>(a2.cols()); }
};

enum class PrMode { spatial_mux, eigenmode };

/// Per-stream powers summing to p_j; an empty vector means an equal split.
struct PowerSplit {
    std::vector<double> pr1;
    std::vector<double> pr2;
};

/// i.i.d. CN(0, 1) entries.
CMatrix sample_cscg_matrix(Eigen::Index rows, Eigen::Index cols, RngStream& rng);

/// Draws h, g1, g2, f (in that order) as i.i.d. Rayleigh channels.
ChannelSet draw_channels(const SystemConfig& cfg, RngStream& rng);

PrLinkDesign design_pr_link(const SystemConfig& cfg, const CMatrix& f, PrMode mode,
                            const PowerSplit& power_split = {});

/// True iff every e with (a^H g) e = 0 also has (b g) e = 0, i.e. the row space of
/// b*g lies inside the row space of a^H*g.
bool check_subsume_condition(const CMatrix& a, const CMatrix& b, const CMatrix& g);

}  // namespace cogbeam
