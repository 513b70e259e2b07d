// dump an antidiagonal LPP profile and its rescaled process to CSV on stdout
#include <cstdio>
#include <cstdlib>

#include "kpz/lpp.hpp"

int main(int argc, char** argv) {
  long long N = argc > 1 ? std::atoll(argv[1]) : 200;
  double q = argc > 2 ? std::atof(argv[2]) : 0.25;
  std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 1;

  kpz::WeightField f{seed, q, kpz::WeightVariant::ZeroBased, std::nullopt};
  long long k_half = N / 4;
  kpz::AntidiagonalProfile p = kpz::antidiagonal_profile(f, N, -k_half, k_half);
  kpz::RescaledProcess H = kpz::rescale_H(p);
  std::printf("k,value,s,H\n");
  for (long long k = p.k_min; k <= p.k_max(); k++)
    std::printf("%lld,%lld,%.8f,%.8f\n", k, p.at(k), H.s_at(k), H.at_k(k));
  return 0;
}
