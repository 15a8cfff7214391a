#pragma once

#include <string>

#include "rdlab/bunce_deddens.hpp"
#include "rdlab/config.hpp"
#include "rdlab/dihedral.hpp"
#include "rdlab/odometer.hpp"
#include "rdlab/report.hpp"
#include "rdlab/sequence_algebra.hpp"
#include "rdlab/uhf.hpp"

namespace rdlab {

std::string version_string();

// Full ordered suite: contract checks, block products, stage norm bound,
// submultiplicativity, tail bound, head exponential, head-tail products,
// exponential growth bound, length-grid growth bound, norm equivalences and
// the per-algebra oracle cross-checks.
ReportBundle run_verify(const ExperimentConfig& cfg);

// Exponential growth experiment only: per-t table plus fitted slopes.
ReportBundle run_pbe(const ExperimentConfig& cfg);

// Norm equivalences only.
ReportBundle run_equiv(const ExperimentConfig& cfg);

// Block decomposition of a serialized element: block norms plus the weighted
// norm table for N = 0..n_max. element_json is {"algebra": ..., "element": ...}.
ReportBundle run_decompose(const ExperimentConfig& cfg, const std::string& element_json);

// Coefficient-list element serialization (JSON payloads).
std::string serialize_element(const SequenceAlgebra& alg, const SequenceElement& a);
std::string serialize_element(const OdometerAlgebra& alg, const OdometerElement& a);
std::string serialize_element(const DihedralAlgebra& alg, const SDElement& a);
std::string serialize_element(const BunceDeddensAlgebra& alg, const BdElement& a);
std::string serialize_element(const UhfAlgebra& alg, const UhfElement& a);

SequenceElement deserialize_sequence(const SequenceAlgebra& alg, const std::string& json);
OdometerElement deserialize_odometer(const OdometerAlgebra& alg, const std::string& json);
SDElement deserialize_dihedral(const DihedralAlgebra& alg, const std::string& json);
BdElement deserialize_bd(const BunceDeddensAlgebra& alg, const std::string& json);
UhfElement deserialize_uhf(const UhfAlgebra& alg, const std::string& json);

}  // namespace rdlab
