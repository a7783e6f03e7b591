#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "couette/spectral/field.hpp"

namespace couette::lp {

// bernstein_2d  ||Delta_j u||_Linf          <= C 2^j sum_{|k-j|<=2} ||Delta_k u||_L2   (plane)
// ber1          ||log T_f g|| + ||log T*||  <= C ||f||_Linf ||log g||                 (circle)
// ber2          ||log T_f g||               <= C ||f||_L2 || |D|^(1/2) log g||        (circle)
// ber3          ||log T_(dx f) g||          <= C ||f||_Linf ||log dx g||              (circle)
// gn            ||u||_Linf                  <= C ||u||_L2^(1/2) ||dy u||_L2^(1/2)     (line)
// schur         |<T f, g>|                  <= C ||f||_l2 ||g||_l2, dyadic kernel
// sobolev_log   ||f - mean f||_Linf         <= C || |D|^(1/2) log f||_L2              (circle)
// log is ln(e + |D_x|); T* in ber1 is the remainder fg - T_f g.
enum class InequalityId { bernstein_2d, ber1, ber2, ber3, gn, schur, sobolev_log };
inline constexpr InequalityId kInequalityIds[] = {InequalityId::bernstein_2d, InequalityId::ber1,
                                                  InequalityId::ber2,         InequalityId::ber3,
                                                  InequalityId::gn,           InequalityId::schur,
                                                  InequalityId::sobolev_log};

std::string to_string(InequalityId id);
InequalityId inequality_from_string(const std::string& s);

// Circle samples are y-independent fields, line samples x-independent ones;
// their norms are taken on T or on the y-line respectively.
struct InequalitySample {
  spectral::SpectralField f, g;
  std::vector<double> seq_f, seq_g;  // schur only
};

using SampleGenerator = std::function<InequalitySample(int index)>;

struct InequalityEvaluation {
  double lhs = 0;
  double rhs = 0;  // without the constant
};

InequalityEvaluation evaluate_inequality(InequalityId id, const InequalitySample& sample);

struct InequalityReport {
  InequalityId id{};
  // lhs, rhs and their ratio for the sample with the largest ratio.
  double lhs = 0;
  double rhs_without_constant = 0;
  double empirical_constant = 0;
  int samples = 0;
  double max_constant_observed = 0;
  int precondition_violations = 0;  // rhs == 0 while lhs > 0
  int resolution = 0;
  std::uint64_t seed = 0;
};

// Samples are evaluated concurrently; the report does not depend on the
// thread count.
InequalityReport verify_inequality(InequalityId id, const SampleGenerator& generator, int n_samples,
                                   int resolution = 0, std::uint64_t seed = 0);

// Random admissible samples. resolution is nx for circle samples, ny for gn,
// n (square grid) for bernstein_2d and j_max for schur. Every random number
// is keyed by (seed, sample, wavenumber label), so a finer grid reproduces
// the coarse sample and only adds its own higher modes.
SampleGenerator default_generator(InequalityId id, int resolution, std::uint64_t seed);
int default_resolution(InequalityId id);

struct SuiteEntry {
  InequalityReport base, doubled;
  double change = 0;  // |doubled / base - 1|
  bool stable = false;
};

SuiteEntry run_suite_entry(InequalityId id, int n_samples, std::uint64_t seed, double tolerance = 0.1);
// Every inequality at its default resolution and at twice it.
std::vector<SuiteEntry> run_inequality_suite(int n_samples, std::uint64_t seed, double tolerance = 0.1);

// inequality_id,samples,max_constant_observed,resolution,seed
void write_inequality_csv(std::ostream& out, std::span<const InequalityReport> reports);

}  // namespace couette::lp
