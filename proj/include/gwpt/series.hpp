#pragma once

#include <optional>
#include <vector>

#include "gwpt/q_form.hpp"
#include "gwpt/rational.hpp"
#include "gwpt/stars.hpp"
#include "gwpt/u_series.hpp"

namespace gwpt {

// Tangency data: a vector of integer partitions (weakly decreasing, positive).
struct PartitionVector {
    std::vector<std::vector<long>> partitions;

    static PartitionVector make(std::vector<std::vector<long>> parts);
    long total_size() const;    // sum of |mu_j|
    long total_length() const;  // sum of l(mu_j)
};

struct PartitionStats {
    Integer m;    // product over partitions of the product of the parts
    Integer aut;  // product of |Aut(mu_j)|
    int sign;     // product of (-1)^{l(mu_j) - |mu_j|}
};

PartitionStats partition_stats(const PartitionVector &mu);

// Anticanonical degree d and sum of l(mu_j) - |mu_j| for the series carriers.
struct StarDiscreteData {
    long d = 0;
    long ell_minus_size = 0;
    bool operator==(const StarDiscreteData &o) const {
        return d == o.d && ell_minus_size == o.ell_minus_size;
    }
};

// d = total ray weight; ell_minus_size for maximal tangency (one part per ray).
StarDiscreteData data_for_full_boundary_star(const Star &s);

struct GWSeries {
    TruncatedULaurent series;
    StarDiscreteData data;
};

struct PTSeries {
    QForm form;
    StarDiscreteData data;
};

// Single-complex, single-mu term of the degeneration formula.
//   GW: m/aut * u^{2 l(mu)} * prod(series)
//   PT: sign * m/aut * q^{-|mu|} * prod(forms)
// The glued discrete data is d = sum d_V - 2|mu| and
// ell_minus_size = sum sigma_V - 2(l(mu) - |mu|), the unique rule compatible
// with the change of variables.
GWSeries glue_degeneration(const std::vector<GWSeries> &vertex_series, const PartitionVector &mu);
PTSeries glue_degeneration(const std::vector<PTSeries> &vertex_series, const PartitionVector &mu);

// Maximal-tangency linear star: (1/d) u^{-2} resp. ((-1)^{d-1}/d) q^d, with
// data (2d, 2-2d); the zero series when ell > 1.
GWSeries linear_star_gw(long d, long ell);
PTSeries linear_star_pt(long d, long ell);

// Principal series of the normalized trivalent star of multiplicity N
// (weights 1, N, 1; data d = N+2, ell_minus_size = 1-N):
//   GW: (2/u^3) sin(N u / 2), PT: q (1 - (-q)^N).
GWSeries principal_gw(long N, long order);
PTSeries principal_pt(long N);
// The display variant q (1+q)^N; equals principal_pt only at N = 1.
PTSeries principal_pt_display(long N);

struct CorrespondenceResult {
    bool pass = false;
    bool insufficient_truncation = false;
    std::optional<long> first_mismatch_exponent;
};

// (-q)^{-d/2} Z_PT == (-iu)^{d+sigma} Z_GW under q = -e^{iu}, compared
// coefficientwise on the overlap (at least 5 known coefficients required).
CorrespondenceResult correspondence_check(const PTSeries &pt, const GWSeries &gw, long d,
                                          long sigma, long order);

struct PrefactorFit {
    long d = 0;
    long sigma = 0;
    GaussianRational unit;  // one of 1, -1, i, -i
};

// Unique (d, sigma, unit) with |d|, |sigma| <= 40 making
// unit * (-q)^{-d/2} pt match (-iu)^{d+sigma} gw; absence is a valid answer.
std::optional<PrefactorFit> fit_prefactor(const PTSeries &pt, const GWSeries &gw, long order);

bool is_laurent_polynomial(const QForm &f);

}  // namespace gwpt
