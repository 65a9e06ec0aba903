#pragma once

#include <string>

#include <json.hpp>

#include "treeprep/amplitude_tree.hpp"
#include "treeprep/circuit.hpp"
#include "treeprep/noise.hpp"

namespace treeprep {

using Json = nlohmann::json;

// Amplitude input file: {"n": int, "amplitudes": [[re, im], ...]} with 2^n entries.
Json target_to_json(const TargetState&);
TargetState target_from_json(const Json&);

// Architecture export: qubit table {role, layer, index, id} plus edge list.
Json architecture_to_json(const Architecture&);

// Circuit file: {"variant", "n", "moments": [[{kind, qubits, params?}...]]}.
// Gates are sorted by operand list inside each moment, so serialization is
// deterministic; params hold the 2x2 payload row-major as [re, im] pairs.
Json circuit_to_json(const Circuit&);
Circuit circuit_from_json(const Json&);

// Error-config dump for failure reproduction: [{moment, qubit, pauli}...].
Json config_to_json(const ErrorConfig&);
ErrorConfig config_from_json(const Json&, int num_moments, int num_qubits);

// File helpers; throw std::runtime_error on I/O failure.
Json read_json_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace treeprep
