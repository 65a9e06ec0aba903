#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <string>
#include <vector>

#include "treeprep/architecture.hpp"

namespace treeprep {

enum class GateKind : uint8_t { Rot1, CRot, OpenCRot, CNot, Swap, DistSwap, Route, CRoute };
constexpr int kGateKindCount = 8;

std::string gate_kind_name(GateKind k);
GateKind gate_kind_from_name(const std::string&);

// Atomic moment-level gate. Operand order is fixed per kind:
//   Rot1      {target}                  unitary payload (NOT = X payload)
//   CRot      {control, target}         payload applied when control = 1
//   OpenCRot  {control, target}         payload applied when control = 0
//   CNot      {control, target}
//   Swap      {a, b}
//   DistSwap  {a, mid, b}               swaps a and b across the a-mid-b path
//   Route     {rt, in, lo, ro}          rt=0: swap(in,lo); rt=1: swap(in,ro)
//   CRoute    {m, d, in, lo, ro}        m=0: identity; m=1: route by d
struct Gate {
    GateKind kind = GateKind::Rot1;
    std::vector<int> qubits;
    Eigen::Matrix2cd unitary = Eigen::Matrix2cd::Identity();

    bool has_unitary() const {
        return kind == GateKind::Rot1 || kind == GateKind::CRot || kind == GateKind::OpenCRot;
    }
    int target() const;  // payload target for unitary kinds

    static Gate rot1(int q, const Eigen::Matrix2cd& u);
    static Gate not_gate(int q);
    static Gate crot(int control, int target, const Eigen::Matrix2cd& u);
    static Gate open_crot(int control, int target, const Eigen::Matrix2cd& u);
    static Gate cnot(int control, int target);
    static Gate swap(int a, int b);
    static Gate dist_swap(int a, int mid, int b);
    static Gate route(int rt, int in, int lo, int ro);
    static Gate croute(int m, int d, int in, int lo, int ro);
};

using Moment = std::vector<Gate>;

struct Violation {
    int moment = 0;
    int gate = 0;
    std::string message;
};

struct ResourceMetrics {
    int depth = 0;
    long gate_count = 0;
    long sta = 0;  // sum over touched qubits of (last - first + 1) moments
    std::array<long, kGateKindCount> per_kind{};
};

// Time-ordered moments of disjoint-support gates over a fixed architecture.
// Moments may be empty (idle steps still exist on the clock and still take
// noise). append_moment enforces operand disjointness and connectivity.
class Circuit {
public:
    explicit Circuit(std::shared_ptr<const Architecture> arch) : arch_(std::move(arch)) {}

    const Architecture& arch() const { return *arch_; }
    std::shared_ptr<const Architecture> arch_ptr() const { return arch_; }

    int moment_count() const { return static_cast<int>(moments_.size()); }
    const Moment& moment(int m) const { return moments_[static_cast<size_t>(m)]; }
    const std::vector<Moment>& moments() const { return moments_; }

    // Throws ConflictError (naming the qubit) or ConnectivityError (naming
    // the gate) when the moment is malformed.
    void append_moment(Moment gates);

    // Trusted path for deserialization: no validation, so that loaded files
    // can be inspected with validate_connectivity instead of being rejected.
    static Circuit from_moments_unchecked(std::shared_ptr<const Architecture> arch,
                                          std::vector<Moment> moments);

    static Circuit concat(const Circuit& a, const Circuit& b);

    ResourceMetrics metrics() const;
    std::vector<Violation> validate_connectivity() const;

private:
    std::shared_ptr<const Architecture> arch_;
    std::vector<Moment> moments_;
};

// Per-kind shape check against the architecture; empty message means legal.
std::string gate_shape_error(const Architecture& arch, const Gate& g);

}  // namespace treeprep
