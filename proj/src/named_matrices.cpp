#include "conewit/named_matrices.hpp"

#include <cmath>

namespace conewit {

CMat jarre_witness() {
  const Complex i(0, 1);
  CMat w(4, 4);
  w << 0, -i, i, 1, //
      i, 0, -i, 1,  //
      -i, i, 0, 1,  //
      1, 1, 1, 0;
  return w;
}

CMat h_family(double x) {
  const Complex ix(0, x);
  CMat h(4, 4);
  h << 1, -ix, ix, x, //
      ix, 1, -ix, x,  //
      -ix, ix, 1, x,  //
      x, x, x, 1;
  return h;
}

CMat horn_matrix() {
  RMat h(5, 5);
  h << 1, -1, 1, 1, -1, //
      -1, 1, -1, 1, 1,  //
      1, -1, 1, -1, 1,  //
      1, 1, -1, 1, -1,  //
      -1, 1, 1, -1, 1;
  return h.cast<Complex>();
}

CMat circulant_pentagon() {
  const double c = 2.0 * std::cos(M_PI / 5.0);
  RMat a = RMat::Zero(5, 5);
  for (int i = 0; i < 5; ++i) {
    a(i, i) = c;
    a(i, (i + 1) % 5) = 1.0;
    a(i, (i + 4) % 5) = 1.0;
  }
  return a.cast<Complex>();
}

CMat agler_extremal_y() {
  RMat y(4, 4);
  y << 1, 1, 0, 1, //
      1, 2, 1, 0,  //
      0, 1, 1, -1, //
      1, 0, -1, 2;
  return y.cast<Complex>();
}

CMat named_matrix(const std::string& name) {
  if (name == "jarre") return jarre_witness();
  if (name == "horn") return horn_matrix();
  if (name == "circulantA") return circulant_pentagon();
  if (name == "aglerY") return agler_extremal_y();
  if (name.rfind("h:", 0) == 0) return h_family(std::stod(name.substr(2)));
  throw Error(Errc::BadArgument,
              "named_matrix: unknown name '" + name +
                  "' (expected jarre, horn, circulantA, aglerY, h:<x>)");
}

} // namespace conewit
