// Regenerates tests/data/golden/v1/golden.csv.
//   wallscale_golden [output.csv]

#include <cstdio>
#include <fstream>
#include <iostream>

#include "wallscale/golden.hpp"
#include "wallscale/magnetostatics.hpp"

using namespace wallscale;

int main(int argc, char** argv) {
  try {
    const CrossSection cs(0.1, 0.05);
    const ClosedFormWall wall{1.0, 1.0, 0.0};
    std::cerr.precision(17);
    const RichardsonResult r = e_s_oracle_richardson(wall, 20.0, 4097, cs);
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
      std::cerr << "N = " << r.nodes[i] << "  oracle " << r.energies[i] << '\n';
    std::cerr << "observed order " << r.order << '\n';

    BoundaryOracleConfig coarse;
    coarse.stride = 8;
    const Profile1D p = sample_wall(wall, 20.0, 4097).profile;
    const double ev = e_v_volume_oracle(p, cs, coarse).energy;

    std::vector<GoldenEntry> rows{
        {"standard_wall_l0.1_d0.05", "e_s", r.extrapolated, 0.02},
        {"standard_wall_l0.1_d0.05", "e_s_order", r.order, 0.1},
        {"standard_wall_l0.1_d0.05", "e_v", ev, 0.05},
    };
    if (argc > 1) {
      std::ofstream out(argv[1]);
      write_golden_csv(out, rows);
    } else {
      write_golden_csv(std::cout, rows);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
