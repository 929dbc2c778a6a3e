#include "quadrature.hpp"
#include <cmath>
#include <vector>

namespace rcns::quadrature {

const std::array<double, 32> kGauss32Nodes = {{
    -9.97263861849481570e-01, -9.85611511545268382e-01,
    -9.64762255587506390e-01, -9.34906075937739667e-01,
    -8.96321155766052202e-01, -8.49367613732569970e-01,
    -7.94483795967942386e-01, -7.32182118740289711e-01,
    -6.63044266930215231e-01, -5.87715757240762304e-01,
    -5.06899908932229359e-01, -4.21351276130635333e-01,
    -3.31868602282127667e-01, -2.39287362252137065e-01,
    -1.44471961582796488e-01, -4.83076656877383104e-02,
    4.83076656877383104e-02, 1.44471961582796488e-01,
    2.39287362252137065e-01, 3.31868602282127667e-01,
    4.21351276130635333e-01, 5.06899908932229359e-01,
    5.87715757240762304e-01, 6.63044266930215231e-01,
    7.32182118740289711e-01, 7.94483795967942386e-01,
    8.49367613732569970e-01, 8.96321155766052202e-01,
    9.34906075937739667e-01, 9.64762255587506390e-01,
    9.85611511545268382e-01, 9.97263861849481570e-01,
}};

const std::array<double, 32> kGauss32Weights = {{
    7.01861000946929839e-03, 1.62743947309059653e-02,
    2.53920653092624266e-02, 3.42738629130216257e-02,
    4.28358980222264263e-02, 5.09980592623762441e-02,
    5.86840934785357038e-02, 6.58222227763617523e-02,
    7.23457941088484491e-02, 7.81938957870703111e-02,
    8.33119242269468457e-02, 8.76520930044039082e-02,
    9.11738786957638631e-02, 9.38443990808045664e-02,
    9.56387200792748332e-02, 9.65400885147278121e-02,
    9.65400885147278121e-02, 9.56387200792748332e-02,
    9.38443990808045664e-02, 9.11738786957638631e-02,
    8.76520930044039082e-02, 8.33119242269468457e-02,
    7.81938957870703111e-02, 7.23457941088484491e-02,
    6.58222227763617523e-02, 5.86840934785357038e-02,
    5.09980592623762441e-02, 4.28358980222264263e-02,
    3.42738629130216257e-02, 2.53920653092624266e-02,
    1.62743947309059653e-02, 7.01861000946929839e-03,
}};

}  // namespace rcns::quadrature

namespace rcns::quadrature {

namespace {

// x_k = tanh(pi/2 sinh(kh)), w_k = h (pi/2) cosh(kh) / cosh^2(pi/2 sinh(kh))
struct TanhSinhStorage {
  std::vector<double> nodes, weights;

  TanhSinhStorage() {
    const double h = 1.0 / 8.0;
    const double half_pi = 1.5707963267948966;
    const int k_max = 40;  // weights underflow well before this
    for (int k = -k_max; k <= k_max; ++k) {
      const double s = std::sinh(k * h);
      const double x = std::tanh(half_pi * s);
      const double c = std::cosh(half_pi * s);
      const double w = h * half_pi * std::cosh(k * h) / (c * c);
      if (w < 1e-320 || std::abs(x) >= 1.0) continue;
      nodes.push_back(x);
      weights.push_back(w);
    }
  }
};

}  // namespace

const TanhSinhTable& tanh_sinh_table() {
  static const TanhSinhStorage storage;
  static const TanhSinhTable table{storage.nodes.size(), storage.nodes.data(),
                                   storage.weights.data()};
  return table;
}

}  // namespace rcns::quadrature
