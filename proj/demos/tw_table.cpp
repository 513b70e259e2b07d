// emit a Tracy-Widom CDF table as CSV on stdout: x, F2(x), F1(x)
#include <cstdio>
#include <cstdlib>

#include "kpz/tracy_widom.hpp"

int main(int argc, char** argv) {
  double lo = argc > 1 ? std::atof(argv[1]) : -6.0;
  double hi = argc > 2 ? std::atof(argv[2]) : 4.0;
  double step = argc > 3 ? std::atof(argv[3]) : 0.1;
  std::printf("x,F2,F1\n");
  for (double x = lo; x <= hi + 1e-12; x += step)
    std::printf("%.4f,%.10f,%.10f\n", x, kpz::f2_table()(x), kpz::f1_table()(x));
  return 0;
}
