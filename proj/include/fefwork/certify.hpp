#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fefwork/report.hpp"

namespace fefwork {

struct Violation {
  int sample = 0;
  std::string check;
  std::string detail;
};

struct CertifySummary {
  int d = 2;
  int samples = 0;
  int checked = 0;  // individual inequality evaluations
  std::vector<Violation> violations;
  /// Readings that are reported but do not count as violations: the erasure
  /// lemma taken at one copy, and Q-continuity with the 1/d constant.
  std::vector<Violation> informational;
};

struct CertifyOptions {
  std::uint64_t seed = 0;
  SeeSawOptions seeSaw;
  double tolSdp = 1e-9;
  double kbt = 1.0;
};

/// Runs the inequality suite on `samples` random states of local dimension d.
/// Sample k uses sub-seed deriveSeed(seed, k) and rank 1 + k mod d^2.
CertifySummary certify(int d, int samples, const CertifyOptions& options = {});

}  // namespace fefwork
