// Scan the splitting parameter and report the tunneling period, then show one
// full oscillation at the last point.

#include "topospin/topospin.hpp"

#include <cstdio>

int main() {
    using namespace topospin;

    std::printf("%-10s %-14s %-14s\n", "delta", "delta_freq", "tau");
    ModelParams mp;
    for (double delta : {0.02, 0.05, 0.1, 0.2, 0.5}) {
        mp.delta = delta;
        const Splitting s = splitting(mp);
        std::printf("%-10g %-14.8f %-14.8f\n", delta, s.delta_freq, tunneling_time(mp));
    }

    mp.delta = 0.5;
    const double tau = tunneling_time(mp);
    const EvolutionTrace tr = tunneling_trace(mp, 2.0 * tau, 9);
    std::printf("\none full period at delta=%g (tau=%.6f):\n", mp.delta, tau);
    std::printf("%-12s %-12s %-12s\n", "t/tau", "p_e1", "p_e3");
    for (std::size_t k = 0; k < tr.times.size(); ++k)
        std::printf("%-12.4f %-12.8f %-12.8f\n", tr.times[k] / tau, tr.p_e1[k], tr.p_e3[k]);
    return 0;
}
