#pragma once

#include <Eigen/Core>
#include <array>
#include <string>
#include <vector>

namespace cutbench_tests {

// Published mean approximation ratios for eight solver configurations on
// fifteen instance sizes; used as a regression fixture for the rank-based
// statistics. Column order matches reference_solver_ids().
inline const Eigen::MatrixXd& reference_ar_table() {
  static const Eigen::MatrixXd table = [] {
    Eigen::MatrixXd t(15, 8);
    t << 0.996, 0.976, 0.996, 0.878, 1.000, 1.000, 1.000, 1.000,
         0.981, 0.981, 0.979, 0.871, 0.979, 0.995, 1.000, 1.000,
         0.969, 0.962, 0.961, 0.904, 0.977, 0.983, 0.984, 0.987,
         0.986, 0.973, 0.973, 0.956, 0.978, 0.960, 0.976, 0.976,
         0.990, 0.986, 0.988, 0.943, 0.965, 0.962, 0.970, 0.980,
         0.987, 0.981, 0.981, 0.926, 0.968, 0.949, 0.953, 0.960,
         0.995, 0.980, 0.986, 0.963, 0.977, 0.949, 0.958, 0.963,
         0.988, 0.982, 0.987, 0.954, 0.969, 0.944, 0.953, 0.955,
         0.987, 0.984, 0.986, 0.937, 0.976, 0.945, 0.954, 0.953,
         0.989, 0.983, 0.987, 0.948, 0.977, 0.943, 0.949, 0.950,
         0.986, 0.987, 0.987, 0.970, 0.977, 0.947, 0.951, 0.951,
         0.983, 0.985, 0.986, 0.923, 0.972, 0.943, 0.948, 0.948,
         0.989, 0.985, 0.987, 0.868, 0.978, 0.947, 0.950, 0.951,
         0.988, 0.988, 0.986, 0.830, 0.982, 0.948, 0.951, 0.952,
         0.990, 0.989, 0.987, 0.970, 0.984, 0.949, 0.951, 0.953;
    return t;
  }();
  return table;
}

inline const std::vector<std::string>& reference_solver_ids() {
  static const std::vector<std::string> ids{"dmrg-chi2", "dmrg-chi10p", "dmrg-chi20p", "gnn",
                                            "gaoc",      "cga-500",     "cga-1000",    "cga-2000"};
  return ids;
}

inline const std::array<int, 15>& reference_instance_sizes() {
  static const std::array<int, 15> sizes{10, 20,  40,  50,  60,  80,  90, 100,
                                         120, 140, 150, 170, 200, 220, 250};
  return sizes;
}

}  // namespace cutbench_tests
