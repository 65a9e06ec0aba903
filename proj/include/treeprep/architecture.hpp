#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace treeprep {

enum class Protocol { TwoPerNode, ThreePerNode };

std::string protocol_name(Protocol p);            // "2pn" / "3pn"
Protocol protocol_from_name(const std::string&);  // throws std::invalid_argument

// Tree roles. Output qubits sit on a line O_1..O_n attached to the root;
// for them layer == index == position.
enum class Role : uint8_t { Upper, Middle, Lower, Output };

std::string role_name(Role r);  // "U" / "M" / "D" / "O"
Role role_from_name(const std::string&);

struct QubitId {
    Role role = Role::Upper;
    int layer = 0;
    int index = 0;

    bool operator==(const QubitId&) const = default;
};

std::string qubit_label(const QubitId&);  // e.g. "U[2,3]", "O[1]"

// Degree-<=3 hardware graph for either protocol variant: a binary tree of
// 2- or 3-qubit nodes plus an output line. Immutable after construction.
//
// Qubit ids are assigned layer by layer (U, then M for 3pn, then D) with the
// output line last, so the root U[0,0] always has id 0.
class Architecture {
public:
    static std::shared_ptr<const Architecture> make(Protocol variant, int n);

    Protocol variant() const { return variant_; }
    int n() const { return n_; }
    int qubit_count() const { return static_cast<int>(qubits_.size()); }
    int edge_count() const { return edge_count_; }

    const QubitId& qubit(int id) const { return qubits_[static_cast<size_t>(id)]; }
    const std::vector<QubitId>& qubits() const { return qubits_; }
    const std::vector<int>& neighbors(int id) const { return adj_[static_cast<size_t>(id)]; }
    bool adjacent(int a, int b) const;
    int max_degree() const;

    bool has(const QubitId& q) const;
    int id_of(const QubitId& q) const;  // throws std::invalid_argument if absent
    int upper(int l, int j) const { return id_of({Role::Upper, l, j}); }
    int middle(int l, int j) const { return id_of({Role::Middle, l, j}); }
    int lower(int l, int j) const { return id_of({Role::Lower, l, j}); }
    int output(int k) const { return id_of({Role::Output, k, k}); }
    int root() const { return upper(0, 0); }

    bool is_output(int id) const { return qubit(id).role == Role::Output; }

    // Parent map of the robustness analysis. The chain runs through the node
    // stack (D -> [M ->] U), then to the grandparent D, and finally up the
    // output line; O_n has no parent.
    std::optional<int> parent(int id) const;

    // Ancestors of U[l,j]: iterated parents, excluding U[l,j] itself.
    std::vector<int> ancestors(int l, int j) const;

    // Ancestors plus all their graph neighbors (sorted, deduplicated).
    std::vector<int> hat_ancestors(int l, int j) const;

private:
    Protocol variant_ = Protocol::TwoPerNode;
    int n_ = 0;
    int edge_count_ = 0;
    std::vector<QubitId> qubits_;
    std::vector<std::vector<int>> adj_;
    // id lookup: per role, per layer, by index
    std::vector<std::vector<int>> upper_, middle_, lower_;
    std::vector<int> output_;

    void add_edge(int a, int b);
};

}  // namespace treeprep
