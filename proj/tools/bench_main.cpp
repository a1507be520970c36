// Benchmark of the OpenMP kernels against their serial references:
// trace generation and threshold sweeps. Results are checked for equality
// while timing, so a scheduling regression shows up here too.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "arts/channel_sim.hpp"
#include "arts/grid.hpp"
#include "arts/selection.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_seconds(F&& f) {
  const auto t0 = clock_type::now();
  f();
  const auto t1 = clock_type::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

bool traces_equal(const arts::Trace& a, const arts::Trace& b) {
  if (a.packets.size() != b.packets.size()) return false;
  for (std::size_t i = 0; i < a.packets.size(); ++i) {
    if (a.packets[i].probe_voltage != b.packets[i].probe_voltage ||
        a.packets[i].sifted_count != b.packets[i].sifted_count ||
        a.packets[i].error_count != b.packets[i].error_count)
      return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n_packets = 2000000;
  if (argc > 1) n_packets = static_cast<std::size_t>(std::stoull(argv[1]));

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; parallel paths run serially\n");
#endif

  arts::ChannelSpec spec;
  spec.mean_signal_per_packet = 10.0;
  spec.background_per_packet = 2.0;
  spec.intrinsic_qber = 0.03;
  spec.fade = arts::LognormalFade(1.0, 1.0);

  arts::Trace serial_trace, parallel_trace;
  const double t_gen_serial =
      time_seconds([&] { serial_trace = arts::generate_serial(spec, n_packets, 42); });
  const double t_gen_parallel =
      time_seconds([&] { parallel_trace = arts::generate(spec, n_packets, 42); });
  const bool gen_equal = traces_equal(serial_trace, parallel_trace);

  const auto thresholds = arts::linspace(0.0, spec.fade.quantile(0.999), 256);
  std::vector<arts::SelectionOutcome> serial_curve, parallel_curve;
  const double t_sweep_serial = time_seconds(
      [&] { serial_curve = arts::empirical_curve_serial(serial_trace, thresholds); });
  const double t_sweep_parallel =
      time_seconds([&] { parallel_curve = arts::empirical_curve(serial_trace, thresholds); });
  bool sweep_equal = serial_curve.size() == parallel_curve.size();
  for (std::size_t i = 0; sweep_equal && i < serial_curve.size(); ++i)
    sweep_equal = serial_curve[i].sifted_total == parallel_curve[i].sifted_total &&
                  serial_curve[i].rate == parallel_curve[i].rate;

  std::printf("\nkernel                      serial [s]  parallel [s]  speedup  identical\n");
  std::printf("generate (%zu packets)  %10.3f  %12.3f  %7.2fx  %s\n", n_packets, t_gen_serial,
              t_gen_parallel, t_gen_serial / t_gen_parallel, gen_equal ? "yes" : "NO");
  std::printf("sweep (%zu thresholds)      %10.3f  %12.3f  %7.2fx  %s\n", thresholds.size(),
              t_sweep_serial, t_sweep_parallel, t_sweep_serial / t_sweep_parallel,
              sweep_equal ? "yes" : "NO");
  return (gen_equal && sweep_equal) ? 0 : 1;
}
