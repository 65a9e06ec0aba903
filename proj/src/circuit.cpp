#include "treeprep/circuit.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "treeprep/errors.hpp"

namespace treeprep {

namespace {

const char* kKindNames[kGateKindCount] = {"Rot1",     "CRot", "OpenCRot", "CNot",
                                          "Swap", "DistSwap", "Route",    "CRoute"};

bool unitary_within(const Eigen::Matrix2cd& u, double tol) {
    return (u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= tol;
}

std::string describe(const Architecture& arch, const Gate& g) {
    std::ostringstream out;
    out << gate_kind_name(g.kind) << "(";
    for (size_t i = 0; i < g.qubits.size(); ++i) {
        if (i) out << ",";
        out << qubit_label(arch.qubit(g.qubits[i]));
    }
    out << ")";
    return out.str();
}

}  // namespace

std::string gate_kind_name(GateKind k) { return kKindNames[static_cast<int>(k)]; }

GateKind gate_kind_from_name(const std::string& s) {
    for (int i = 0; i < kGateKindCount; ++i) {
        if (s == kKindNames[i]) return static_cast<GateKind>(i);
    }
    throw std::invalid_argument("unknown gate kind: " + s);
}

int Gate::target() const {
    switch (kind) {
        case GateKind::Rot1: return qubits[0];
        case GateKind::CRot:
        case GateKind::OpenCRot: return qubits[1];
        default: throw std::logic_error("gate has no unitary target");
    }
}

Gate Gate::rot1(int q, const Eigen::Matrix2cd& u) { return {GateKind::Rot1, {q}, u}; }

Gate Gate::not_gate(int q) {
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    return rot1(q, x);
}

Gate Gate::crot(int control, int target, const Eigen::Matrix2cd& u) {
    return {GateKind::CRot, {control, target}, u};
}

Gate Gate::open_crot(int control, int target, const Eigen::Matrix2cd& u) {
    return {GateKind::OpenCRot, {control, target}, u};
}

Gate Gate::cnot(int control, int target) {
    return {GateKind::CNot, {control, target}, Eigen::Matrix2cd::Identity()};
}

Gate Gate::swap(int a, int b) { return {GateKind::Swap, {a, b}, Eigen::Matrix2cd::Identity()}; }

Gate Gate::dist_swap(int a, int mid, int b) {
    return {GateKind::DistSwap, {a, mid, b}, Eigen::Matrix2cd::Identity()};
}

Gate Gate::route(int rt, int in, int lo, int ro) {
    return {GateKind::Route, {rt, in, lo, ro}, Eigen::Matrix2cd::Identity()};
}

Gate Gate::croute(int m, int d, int in, int lo, int ro) {
    return {GateKind::CRoute, {m, d, in, lo, ro}, Eigen::Matrix2cd::Identity()};
}

std::string gate_shape_error(const Architecture& arch, const Gate& g) {
    static const size_t arity[kGateKindCount] = {1, 2, 2, 2, 2, 3, 4, 5};
    if (g.qubits.size() != arity[static_cast<int>(g.kind)]) return "wrong operand count";
    for (int q : g.qubits) {
        if (q < 0 || q >= arch.qubit_count()) return "operand out of range";
    }
    {
        std::vector<int> sorted = g.qubits;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            return "repeated operand";
    }
    if (g.has_unitary() && !unitary_within(g.unitary, 1e-12)) return "payload not unitary";

    auto adj = [&arch](int a, int b) { return arch.adjacent(a, b); };
    const auto& q = g.qubits;
    switch (g.kind) {
        case GateKind::Rot1:
            return "";
        case GateKind::CRot:
        case GateKind::OpenCRot:
        case GateKind::CNot:
        case GateKind::Swap:
            return adj(q[0], q[1]) ? "" : "operands not adjacent";
        case GateKind::DistSwap:
            if (arch.variant() != Protocol::ThreePerNode)
                return "DistSwap requires the 3-per-node architecture";
            return (adj(q[0], q[1]) && adj(q[1], q[2])) ? "" : "operands do not form a path";
        case GateKind::Route:
            // in, lo, ro form a star around the routing qubit
            return (adj(q[0], q[1]) && adj(q[0], q[2]) && adj(q[0], q[3]))
                       ? ""
                       : "operands do not form a star around rt";
        case GateKind::CRoute:
            // in-m, m-d, d-lo, d-ro: the node stack plus its children
            return (adj(q[2], q[0]) && adj(q[0], q[1]) && adj(q[1], q[3]) && adj(q[1], q[4]))
                       ? ""
                       : "operands do not form the node cluster";
    }
    return "";
}

void Circuit::append_moment(Moment gates) {
    std::unordered_set<int> used;
    for (const Gate& g : gates) {
        std::string shape = gate_shape_error(*arch_, g);
        if (!shape.empty()) {
            throw ConnectivityError("moment " + std::to_string(moments_.size()) + ": " +
                                    describe(*arch_, g) + ": " + shape);
        }
        for (int q : g.qubits) {
            if (!used.insert(q).second) {
                throw ConflictError("moment " + std::to_string(moments_.size()) +
                                    ": qubit " + qubit_label(arch_->qubit(q)) +
                                    " used by two gates");
            }
        }
    }
    moments_.push_back(std::move(gates));
}

Circuit Circuit::from_moments_unchecked(std::shared_ptr<const Architecture> arch,
                                        std::vector<Moment> moments) {
    Circuit c(std::move(arch));
    c.moments_ = std::move(moments);
    return c;
}

Circuit Circuit::concat(const Circuit& a, const Circuit& b) {
    if (a.arch_.get() != b.arch_.get()) {
        throw std::invalid_argument("concat: circuits target different architectures");
    }
    Circuit out(a.arch_);
    out.moments_ = a.moments_;
    out.moments_.insert(out.moments_.end(), b.moments_.begin(), b.moments_.end());
    return out;
}

ResourceMetrics Circuit::metrics() const {
    ResourceMetrics m;
    m.depth = moment_count();
    std::vector<int> first(static_cast<size_t>(arch_->qubit_count()), -1);
    std::vector<int> last(static_cast<size_t>(arch_->qubit_count()), -1);
    for (int t = 0; t < moment_count(); ++t) {
        for (const Gate& g : moments_[static_cast<size_t>(t)]) {
            ++m.gate_count;
            ++m.per_kind[static_cast<size_t>(g.kind)];
            for (int q : g.qubits) {
                if (first[static_cast<size_t>(q)] < 0) first[static_cast<size_t>(q)] = t;
                last[static_cast<size_t>(q)] = t;
            }
        }
    }
    for (size_t q = 0; q < first.size(); ++q) {
        if (first[q] >= 0) m.sta += last[q] - first[q] + 1;
    }
    return m;
}

std::vector<Violation> Circuit::validate_connectivity() const {
    std::vector<Violation> out;
    for (int t = 0; t < moment_count(); ++t) {
        const Moment& moment = moments_[static_cast<size_t>(t)];
        std::unordered_set<int> used;
        for (int i = 0; i < static_cast<int>(moment.size()); ++i) {
            const Gate& g = moment[static_cast<size_t>(i)];
            std::string shape = gate_shape_error(*arch_, g);
            if (!shape.empty()) out.push_back({t, i, describe(*arch_, g) + ": " + shape});
            for (int q : g.qubits) {
                if (!used.insert(q).second) {
                    out.push_back({t, i, describe(*arch_, g) + ": qubit " +
                                          qubit_label(arch_->qubit(q)) + " already in use"});
                }
            }
        }
    }
    return out;
}

}  // namespace treeprep
