#pragma once

#include <filesystem>
#include <string>

#include "levymult/levy_measure.hpp"
#include "levymult/matrix.hpp"
#include "levymult/matrix_decomp.hpp"
#include "levymult/mc_simulator.hpp"
#include "levymult/multiplier_apply.hpp"
#include "levymult/symbol.hpp"

namespace levymult {

// JSON wire formats (complex numbers are always [re, im] arrays):
//   measure   {"type":"atomic","dim":d,"atoms":[[[z...],mass],...]}
//             {"type":"polar_product","dim":d,"radial":{...},"spectral":[...]}
//             {"type":"stable_polar","dim":d,"alpha":a,"spectral":[...]}
//   radial    {"kind":"point_mass","r":r,"mass":m} | {"kind":"exp_over_r"}
//   modulator {"kind":"constant","value":[re,im]}
//             {"kind":"table","values":[[re,im],...]}
//   pair      {"dim":d,"atoms":[[[theta...],mass],...],
//              "modulator":[[re,im],...],"relaxed":false}
//             or {"circle":{"n":4096,"harmonic":k}} for the discretized
//             Lebesgue circle with phi(theta) = e^{i k arg theta}
//   matrix    {"re":[[...]],"im":[[...]]}  (im optional)
//   symbol    {"type":"general","measure":...,"phi":...,"pair":...}
//             {"type":"quadratic_form","A":...,"B":...}
//             {"type":"stable","alpha":a,"spectral":<pair>}
//             {"type":"tempered","spectral":<pair>}
//             {"type":"ratio","nu1":...,"nu2":...}
//             {"type":"truncated","measure":...,"phi":...,"u":u}
//             {"type":"beurling_ahlfors"}
// Nested documents may be JSON strings naming a file (resolved against the
// directory of the enclosing document).

std::string measure_to_json(const LevyMeasure& measure);
LevyMeasure measure_from_json_text(const std::string& text);
LevyMeasure measure_from_file(const std::filesystem::path& path);

std::string modulator_to_json(const JumpModulator& phi);
/// for_atomic selects how a plain "table" binds (per-atom vs per-spectral).
JumpModulator modulator_from_json_text(const std::string& text, bool for_atomic);

std::string pair_to_json(const SphericalPair& pair);
SphericalPair pair_from_json_text(const std::string& text);

std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json_text(const std::string& text);
ComplexMatrix matrix_from_file(const std::filesystem::path& path);

/// Builds a symbol from a JSON document, resolving file references against
/// base_dir.
Symbol symbol_from_json_text(const std::string& text,
                             const std::filesystem::path& base_dir);
Symbol symbol_from_file(const std::filesystem::path& path);

std::string validation_to_json(const ValidationReport& report);
std::string norm_report_to_json(const NormReport& report);
std::string stat_report_to_json(const StatReport& report);
std::string pairing_report_to_json(const PairingReport& report);
std::string ecf_report_to_json(const EcfReport& report);
std::string certificate_to_json(const CertificateReport& report);
std::string decomposition_to_json(const Decomposition& decomposition);
std::string subordination_to_json(const SubordinationReport& report);

}  // namespace levymult
