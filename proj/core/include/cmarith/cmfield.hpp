#pragma once

#include <memory>

#include "cmarith/quadfield.hpp"
#include "cmarith/realfield.hpp"

namespace cmarith {

enum class Splitting { split, inert, ramified };

// The CM field E = k (x) F with chi_E = chi_k o Nm_{F/Q}, under the standing
// hypothesis that D and disc(F) are odd and coprime.
class CMExtension {
public:
    CMExtension(ImagQuadField k, TotallyRealField F);

    const ImagQuadField& k() const { return k_; }
    const TotallyRealField& F() const { return F_; }
    int n() const { return F_.degree(); }
    // number of places of F ramified in E, archimedean included
    int ramified_places() const { return r_; }
    i64 abs_disc_E() const { return abs_disc_E_; }
    i64 disc_F() const { return disc_F_; }
    // conductor factor |D_E / D_F| of the completed L-function
    i64 conductor_factor() const { return abs_disc_E_ / disc_F_; }

    Splitting splitting(const PrimeIdealF& p) const;

    // chi_E on an integral ideal is chi_k of its norm, so the chi_E-weighted
    // Dirichlet coefficient at norm m is chi_k(m) times the ideal count.
    int chi_E_of_norm(i64 m) const { return k_.chi(m); }
    // (count, chi_E-weighted count) tables up to X
    std::pair<std::vector<i64>, std::vector<i64>> ideal_count_tables(i64 X) const {
        auto counts = F_.ideal_counts(X);
        std::vector<i64> weighted(counts.size(), 0);
        for (size_t m = 1; m < counts.size(); ++m) weighted[m] = chi_E_of_norm(i64(m)) * counts[m];
        return {counts, weighted};
    }

    // Local symbol chi_{E,p}(x) in {-1, 0, +1} for x in F^x; 0 never occurs
    // for nonsplit p and x with well-defined valuation.
    int local_symbol(const FElemQ& x, const PrimeIdealF& p) const;

private:
    ImagQuadField k_;
    TotallyRealField F_;
    int r_;
    i64 disc_F_;
    i64 abs_disc_E_;
};

}  // namespace cmarith
