#include "cmarith/cmfield.hpp"

#include <numeric>
#include <stdexcept>

namespace cmarith {

CMExtension::CMExtension(ImagQuadField k, TotallyRealField F)
    : k_(std::move(k)), F_(std::move(F)) {
    disc_F_ = (F_.degree() == 1) ? 1 : F_.poly_disc();
    // Under the monogenic restriction poly_disc is disc_F times a square index;
    // the bundled fields have index 1.  Squarefree-reduce conservatively is not
    // possible in general, so we take poly_disc as D_F and require coprimality
    // with D, which also guarantees the primes above D are index-free.
    if (disc_F_ <= 0) throw std::domain_error("CMExtension: F must be totally real");
    if (std::gcd(k_.D(), disc_F_) != 1)
        throw std::domain_error("CMExtension: discriminants of k and F must be coprime");
    if (disc_F_ % 2 == 0) throw std::domain_error("CMExtension: disc(F) must be odd");

    int n = F_.degree();
    int finite_ram = 0;
    for (auto& [ell, e] : factorize(k_.D())) {
        (void)e;
        auto primes = F_.primes_above(ell);
        int sum_f = 0;
        for (auto& P : primes) {
            if (P.e != 1)
                throw std::domain_error("CMExtension: prime above D ramifies in F (disc clash)");
            sum_f += P.f;
            ++finite_ram;
        }
        if (sum_f != n) throw std::logic_error("CMExtension: ramification data inconsistent");
    }
    r_ = n + finite_ram;

    // |D_E| = D^n * D_F^2, cross-checked against the prime-by-prime data:
    // at ell | D the relative different contributes sum_p f_p = n to ord_ell.
    i128 dE = 1;
    for (int i = 0; i < n; ++i) dE *= k_.D();
    dE *= i128(disc_F_) * disc_F_;
    abs_disc_E_ = checked_cast(dE, "abs_disc_E");
    for (auto& [ell, e] : factorize(abs_disc_E_)) {
        int expected = 0;
        if (k_.D() % ell == 0) expected += n;
        i64 df = disc_F_;
        while (df % ell == 0) {
            df /= ell;
            expected += 2;
        }
        if (e != expected)
            throw std::logic_error("CMExtension: abs_disc_E inconsistent with ramification");
    }
}

Splitting CMExtension::splitting(const PrimeIdealF& p) const {
    if (k_.D() % p.ell == 0) return Splitting::ramified;
    int chi = k_.chi(p.norm());
    return chi == 1 ? Splitting::split : Splitting::inert;
}

int CMExtension::local_symbol(const FElemQ& x, const PrimeIdealF& p) const {
    Splitting sp = splitting(p);
    if (sp == Splitting::split) return 1;
    int v = F_.valuation(x, p);
    if (sp == Splitting::inert) return (v % 2 == 0) ? 1 : -1;
    // ramified in E: chi_{E,p}(x) = (Nm_{F_p/Q_ell}(x), -D)_ell.  Replace x by
    // the integral y = num * den (same square class, valuation shifted by an
    // even amount), then split off ell^vy and take the residue-field norm of
    // the unit part.
    i64 ell = p.ell;
    FElem y = F_.smul(x.den, x.num);
    int vy = F_.valuation(y, p);
    i64 residue = F_.residue_norm_of_unit_part(y, p, vy);
    i128 val = residue;
    if ((i64(p.f) * vy) % 2 != 0) val *= ell;
    return hilbert_symbol(checked_cast(val, "local_symbol"), -k_.D(), Place::prime(ell));
}

}  // namespace cmarith
