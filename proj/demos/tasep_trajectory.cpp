// dump a TASEP height trajectory to CSV on stdout: t,k,h
#include <cstdio>
#include <cstdlib>
#include <string>

#include "kpz/tasep.hpp"

int main(int argc, char** argv) {
  std::string kind = argc > 1 ? argv[1] : "flat";
  long long t_max = argc > 2 ? std::atoll(argv[2]) : 50;
  double q = argc > 3 ? std::atof(argv[3]) : 0.25;
  std::uint64_t seed = argc > 4 ? std::strtoull(argv[4], nullptr, 10) : 1;

  long long radius = t_max + 20;
  kpz::HeightFunction hf =
      kpz::make_initial(kpz::initial_condition_from_name(kind), -radius, radius, seed);
  kpz::Rng rng(kpz::substream(seed, 1));
  std::printf("t,k,h\n");
  for (long long t = 0; t <= t_max; t++) {
    for (long long k = -radius; k <= radius; k++)
      std::printf("%lld,%lld,%lld\n", t, k, hf.at(k));
    kpz::step_dynamics(hf, q, rng);
  }
  return 0;
}
