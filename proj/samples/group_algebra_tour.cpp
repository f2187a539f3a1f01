// Walks through the convolution algebra of Z/4: characters, spectrum,
// an inverse, a non-invertible element and its witness, and a Neumann series.

#include <cmath>
#include <iostream>
#include <sstream>

#include "fdalg/fdalg.hpp"

namespace {

/// Six significant digits, with rounding dust below 1e-12 dropped.
std::string show(fdalg::Scalar z) {
    auto clean = [](double v) { return std::abs(v) < 1e-12 ? 0.0 : v; };
    std::ostringstream os;
    os.precision(6);
    const double re = clean(z.real()), im = clean(z.imag());
    if (im == 0.0) os << re;
    else os << re << (im < 0 ? " - " : " + ") << std::abs(im) << "i";
    return os.str();
}

} // namespace

int main() {
    using namespace fdalg;
    const Semigroup z4 = cyclic_group(4);
    const Algebra a = semigroup_algebra(z4);

    std::cout << "semicharacters of Z/4 (values on 0,1,2,3):\n";
    for (const Semicharacter& phi : semicharacters(z4)) {
        for (Scalar v : phi.values) std::cout << "  " << show(v);
        std::cout << "\n";
    }

    const Element x{2.0, 1.0, 0.0, 0.0}; // 2 delta_0 + delta_1
    const Spectrum s = spectrum(a, x);
    std::cout << "spectrum of 2d0 + d1:";
    for (Scalar v : s.values) std::cout << "  " << show(v);
    std::cout << "\nspectral radius " << spectral_radius(a, x) << ", l1 norm " << norm(NormKind::L1, a, x) << "\n";

    if (auto inv = invert(a, x)) {
        std::cout << "inverse:";
        for (Scalar v : inv->coords()) std::cout << "  " << show(v);
        std::cout << "\n";
    }

    const Element y{1.0, -1.0, 0.0, 0.0}; // d0 - d1 vanishes under the trivial character
    if (!invert(a, y)) {
        const Character w = witness_noninvertible(a, y);
        std::cout << "d0 - d1 is not invertible; witness functional:";
        for (Scalar v : w.functional) std::cout << "  " << show(v);
        std::cout << "\n";
    }

    const NeumannSeries ns = neumann_inverse(a, NormKind::L1, 4.0, x, 1e-12);
    std::cout << "(4e - x)^-1 by Neumann series after " << ns.terms << " terms, residual " << ns.residual << "\n";
}
