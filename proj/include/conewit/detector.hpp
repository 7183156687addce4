#ifndef CONEWIT_DETECTOR_HPP
#define CONEWIT_DETECTOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conewit/cones.hpp"
#include "conewit/states.hpp"

namespace conewit {

enum class VerdictStatus {
  EntangledCertified,  // PPT, on face, mapped matrix refuted as rank-1 generated
  EdgeStateCertified,  // additionally: mapped matrix extremal with rank >= 2
  Inconclusive,        // never asserts separability
  NptEntangled,        // partial transpose not PSD; outside this method's scope
};

const char* verdict_name(VerdictStatus s);

struct EvidenceEntry {
  std::string step; // psd | ppt | ccnr | face | map | cone | r1 | edge
  std::string test;
  double value = 0.0;
  double threshold = 0.0;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  FaceSpec face;
  std::optional<ConeSpec> cone;
  std::uint64_t mapped_digest = 0;
  int mapped_rows = 0;
  int mapped_cols = 0;
  std::vector<EvidenceEntry> evidence;
  std::optional<ExtremalityReport> extremality;
};

struct DetectOptions {
  bool edge = false; // attempt edge certification on the mapped matrix
  Tolerance tol;
  SparseR1Options sparse;
};

Verdict detect(const BipartiteState& s, const FaceSpec& f, const DetectOptions& opt = {});

/// LDOI route: PSD/PPT through the triple shortcuts, CCNR logged as an
/// informational side-check, then the dense pipeline.
Verdict detect(const LdoiTriple& t, const FaceSpec& f, const DetectOptions& opt = {});

Verdict certify_edge(const BipartiteState& s, const FaceSpec& f, const Tolerance& tol = {});
Verdict certify_edge(const LdoiTriple& t, const FaceSpec& f, const Tolerance& tol = {});

/// Tries the three faces in fixed order (sparse, rank1, bosonic) with
/// parameters inferred from the state; returns the best verdict with the
/// merged evidence chain (entries prefixed by face name).
Verdict detect_sweep(const BipartiteState& s, const DetectOptions& opt = {});

/// Sum of k_terms products (v v*) (x) (w w*) with (v, w) sampled to respect
/// the face. The output always passes face_check.
BipartiteState separable_sampler(const FaceSpec& f, int d, int k_terms, std::uint64_t seed);

/// FNV-1a over the canonical little-endian byte serialization (row-major,
/// re then im as IEEE-754 doubles).
std::uint64_t fnv1a_digest(const CMat& m);

/// CONEWIT_SEED (decimal) when set, otherwise a fixed constant.
std::uint64_t default_seed();

} // namespace conewit

#endif
