// Lowest states on the R = 1 pseudosphere at l = 5, with their classification
// and the reconstructed surface wavefunction at a few points.
#include <cstdio>

#include "beltrami.hpp"

int main()
{
    using namespace beltrami;

    const SurfaceParams surface{1.0, 1.0, 1.0};
    const OrbitalNumber ell{5};

    std::printf("V_dC(1)      = %.12f\n", model::dacosta_potential(1.0, surface));
    std::printf("Vbar_eff(1)  = %.12f\n", model::pdm_effective_potential(1.0, ell, surface));
    std::printf("M(1)         = %.12f\n", model::mass_profile(1.0, surface));

    const RadialGrid grid(scenarios::default_u_max(surface.radius, ell.value), 4000, GridMode::staggered_full);
    const RadialProblem problem = discretize(ell, surface, grid);
    Spectrum spectrum = solve(problem, {6, 1e-10, true});
    classify(spectrum, problem);

    for (std::size_t j = 0; j < spectrum.size(); ++j) {
        std::printf("E%zu = %.10f  %s\n", j, spectrum.eigenvalues[j],
                    to_string(spectrum.classifications[j].state));
    }

    const auto stats = scenarios::gap_statistics(spectrum.eigenvalues);
    std::printf("D1 = %.6f, D2 = %.6f, |D1-D2|/max = %.4f\n", stats.delta1, stats.delta2, stats.anharmonicity);

    const auto psi = model::reconstruct_wavefunction(spectrum.eigenvectors[0], grid.nodes(), surface);
    for (std::size_t i = grid.size() / 2; i < grid.size(); i += 400) {
        std::printf("u = %6.3f  |psi|^2 sqrt(g) = %.6e\n", grid[i], psi.surface_density[i]);
    }
    return 0;
}
