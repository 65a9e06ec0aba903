#include "treeprep/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "treeprep/errors.hpp"

namespace treeprep {

namespace {

constexpr Complex kI{0.0, 1.0};

// Orders factor maps for merging; any total order works as long as equal
// maps compare equal.
bool factor_less(const std::pair<int, Factor>& a, const std::pair<int, Factor>& b) {
    if (a.first != b.first) return a.first < b.first;
    if (a.second.kind != b.second.kind) return a.second.kind < b.second.kind;
    auto key = [](const Factor& f) {
        return std::array<double, 4>{f.a0.real(), f.a0.imag(), f.a1.real(), f.a1.imag()};
    };
    return key(a.second) < key(b.second);
}

bool map_less(const ProductTerm& a, const ProductTerm& b) {
    return std::lexicographical_compare(a.factors.begin(), a.factors.end(), b.factors.begin(),
                                        b.factors.end(), factor_less);
}

bool map_equal(const ProductTerm& a, const ProductTerm& b) {
    return a.factors == b.factors;
}

}  // namespace

Factor ProductTerm::factor(int q) const {
    auto it = std::lower_bound(factors.begin(), factors.end(), q,
                               [](const auto& entry, int key) { return entry.first < key; });
    if (it != factors.end() && it->first == q) return it->second;
    return Factor::zero();
}

void ProductTerm::set_factor(int q, const Factor& f) {
    Factor value = f;
    if (value.kind == Factor::Kind::Super) {
        if (std::abs(value.a1) <= kPruneTolerance) {
            amp *= value.a0;
            value = Factor::zero();
        } else if (std::abs(value.a0) <= kPruneTolerance) {
            amp *= value.a1;
            value = Factor::one();
        } else {
            // pivot phase into the amplitude so equal states share a key
            Complex pivot = std::abs(value.a0) >= std::abs(value.a1) ? value.a0 : value.a1;
            Complex phase = pivot / std::abs(pivot);
            amp *= phase;
            value.a0 /= phase;
            value.a1 /= phase;
        }
    }
    auto it = std::lower_bound(factors.begin(), factors.end(), q,
                               [](const auto& entry, int key) { return entry.first < key; });
    const bool present = it != factors.end() && it->first == q;
    if (value.kind == Factor::Kind::Zero) {
        if (present) factors.erase(it);
    } else if (present) {
        it->second = value;
    } else {
        factors.insert(it, {q, value});
    }
}

void ProductTerm::swap_factors(int a, int b) {
    Factor fa = factor(a);
    Factor fb = factor(b);
    if (fa == fb) return;
    set_factor(a, fb);
    set_factor(b, fa);
}

SparseState SparseState::initial(const Architecture& arch) {
    SparseState s;
    ProductTerm t;
    t.set_factor(arch.root(), Factor::one());
    s.terms.push_back(std::move(t));
    return s;
}

double SparseState::squared_norm() const {
    double total = 0.0;
    for (const auto& t : terms) total += std::norm(t.amp);
    return total;
}

void SparseState::merge_and_prune(bool merge) {
    if (merge && terms.size() > 1) {
        std::sort(terms.begin(), terms.end(), map_less);
        size_t w = 0;
        for (size_t i = 1; i < terms.size(); ++i) {
            if (map_equal(terms[w], terms[i])) {
                terms[w].amp += terms[i].amp;
            } else {
                ++w;
                if (w != i) terms[w] = std::move(terms[i]);
            }
        }
        terms.resize(w + 1);
    }
    terms.erase(std::remove_if(terms.begin(), terms.end(),
                               [](const ProductTerm& t) {
                                   return std::abs(t.amp) < kPruneTolerance;
                               }),
                terms.end());
}

namespace {

void apply_unitary_factor(ProductTerm& term, int q, const Eigen::Matrix2cd& u) {
    Factor f = term.factor(q);
    Complex v0 = u(0, 0) * f.amp0() + u(0, 1) * f.amp1();
    Complex v1 = u(1, 0) * f.amp0() + u(1, 1) * f.amp1();
    term.set_factor(q, Factor::super(v0, v1));
}

void apply_pauli_factor(ProductTerm& term, int q, Pauli p) {
    Factor f = term.factor(q);
    switch (p) {
        case Pauli::X:
            term.set_factor(q, Factor::super(f.amp1(), f.amp0()));
            break;
        case Pauli::Y:
            term.set_factor(q, Factor::super(-kI * f.amp1(), kI * f.amp0()));
            break;
        case Pauli::Z:
            term.set_factor(q, Factor::super(f.amp0(), -f.amp1()));
            break;
    }
}

// Resolves a decision qubit to a basis value, splitting the term when it is
// superposed. Returns the bit for the term at `idx`; when a split happens the
// complementary component is appended to the state (still pending the same
// gate, handled by the caller's recursion).
bool resolve_bit(SparseState& state, size_t idx, int q, size_t term_cap, size_t& split_out,
                 bool& did_split) {
    ProductTerm& t = state.terms[idx];
    Factor f = t.factor(q);
    did_split = false;
    if (f.kind == Factor::Kind::Zero) return false;
    if (f.kind == Factor::Kind::One) return true;
    if (state.terms.size() + 1 > term_cap) {
        throw CapacityError("sparse state exceeded term cap of " + std::to_string(term_cap));
    }
    ProductTerm other = t;
    t.amp *= f.a0;
    t.set_factor(q, Factor::zero());
    other.amp *= f.a1;
    other.set_factor(q, Factor::one());
    split_out = state.terms.size();
    state.terms.push_back(std::move(other));
    did_split = true;
    return false;  // `idx` carries the 0 component
}

void apply_gate_to_term(SparseState& state, size_t idx, const Gate& g, size_t term_cap) {
    switch (g.kind) {
        case GateKind::Rot1:
            apply_unitary_factor(state.terms[idx], g.qubits[0], g.unitary);
            return;
        case GateKind::CRot:
        case GateKind::OpenCRot:
        case GateKind::CNot: {
            size_t split = 0;
            bool did_split = false;
            bool bit = resolve_bit(state, idx, g.qubits[0], term_cap, split, did_split);
            if (did_split) apply_gate_to_term(state, split, g, term_cap);
            const bool fire = g.kind == GateKind::OpenCRot ? !bit : bit;
            if (!fire) return;
            if (g.kind == GateKind::CNot) {
                ProductTerm& t = state.terms[idx];
                Factor f = t.factor(g.qubits[1]);
                t.set_factor(g.qubits[1], Factor::super(f.amp1(), f.amp0()));
            } else {
                apply_unitary_factor(state.terms[idx], g.qubits[1], g.unitary);
            }
            return;
        }
        case GateKind::Swap:
            state.terms[idx].swap_factors(g.qubits[0], g.qubits[1]);
            return;
        case GateKind::DistSwap:
            state.terms[idx].swap_factors(g.qubits[0], g.qubits[2]);
            return;
        case GateKind::Route: {
            size_t split = 0;
            bool did_split = false;
            bool bit = resolve_bit(state, idx, g.qubits[0], term_cap, split, did_split);
            if (did_split) apply_gate_to_term(state, split, g, term_cap);
            state.terms[idx].swap_factors(g.qubits[1], bit ? g.qubits[3] : g.qubits[2]);
            return;
        }
        case GateKind::CRoute: {
            size_t split = 0;
            bool did_split = false;
            bool m = resolve_bit(state, idx, g.qubits[0], term_cap, split, did_split);
            if (did_split) apply_gate_to_term(state, split, g, term_cap);
            if (!m) return;
            bool d = resolve_bit(state, idx, g.qubits[1], term_cap, split, did_split);
            if (did_split) apply_gate_to_term(state, split, g, term_cap);
            state.terms[idx].swap_factors(g.qubits[2], d ? g.qubits[4] : g.qubits[3]);
            return;
        }
    }
}

}  // namespace

void apply_gate(SparseState& state, const Gate& gate, size_t term_cap) {
    const size_t existing = state.terms.size();
    for (size_t i = 0; i < existing; ++i) apply_gate_to_term(state, i, gate, term_cap);
}

void apply_errors(SparseState& state, const ErrorConfig& config, int m) {
    const auto& events = config.moments[static_cast<size_t>(m)];
    for (auto& term : state.terms) {
        for (const ErrorEvent& e : events) apply_pauli_factor(term, e.qubit, e.pauli);
    }
}

RunResult run(const Circuit& circuit, const ErrorConfig& config, const RunOptions& opts) {
    if (!config.moments.empty() && config.moment_count() != circuit.moment_count()) {
        throw std::invalid_argument("run: config moment count does not match circuit");
    }
    size_t cap = opts.term_cap;
    if (cap == 0) cap = size_t(1) << std::min(circuit.arch().n() + 8, 30);

    RunResult result;
    result.state = SparseState::initial(circuit.arch());
    for (int m = 0; m < circuit.moment_count(); ++m) {
        for (const Gate& g : circuit.moment(m)) apply_gate(result.state, g, cap);
        if (!config.moments.empty()) apply_errors(result.state, config, m);
        result.state.merge_and_prune(opts.merge);
        if (result.state.terms.size() > cap) {
            throw CapacityError("sparse state exceeded term cap of " + std::to_string(cap));
        }
        if (opts.record_term_counts) result.term_counts.push_back(result.state.terms.size());
    }
    return result;
}

RunResult run_noiseless(const Circuit& circuit, const RunOptions& opts) {
    return run(circuit, ErrorConfig{}, opts);
}

SparseState expand_output_basis(const SparseState& state, const Architecture& arch) {
    SparseState out;
    out.terms.reserve(state.terms.size());
    for (const auto& term : state.terms) out.terms.push_back(term);
    for (size_t i = 0; i < out.terms.size(); ++i) {
        for (const auto& [q, f] : std::vector<std::pair<int, Factor>>(out.terms[i].factors)) {
            if (f.kind != Factor::Kind::Super || !arch.is_output(q)) continue;
            ProductTerm one_part = out.terms[i];
            out.terms[i].amp *= f.a0;
            out.terms[i].set_factor(q, Factor::zero());
            one_part.amp *= f.a1;
            one_part.set_factor(q, Factor::one());
            out.terms.push_back(std::move(one_part));
        }
    }
    out.merge_and_prune(true);
    return out;
}

std::optional<long> output_index(const ProductTerm& term, const Architecture& arch) {
    const int n = arch.n();
    long j = 0;
    for (int k = 1; k <= n; ++k) {
        Factor f = term.factor(arch.output(k));
        if (f.kind == Factor::Kind::Super) return std::nullopt;
        if (f.kind == Factor::Kind::One) j |= 1L << (n - k);
    }
    return j;
}

namespace {

Complex factor_overlap(const Factor& bra, const Factor& ket) {
    return std::conj(bra.amp0()) * ket.amp0() + std::conj(bra.amp1()) * ket.amp1();
}

using FactorMap = std::vector<std::pair<int, Factor>>;

// <a|b> for the factor maps only (amplitudes excluded); early-exits at 0.
Complex map_overlap(const FactorMap& a, const FactorMap& b) {
    Complex total{1.0, 0.0};
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        Factor fa = Factor::zero();
        Factor fb = Factor::zero();
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            fa = (ia++)->second;
        } else if (ia == a.end() || ib->first < ia->first) {
            fb = (ib++)->second;
        } else {
            fa = (ia++)->second;
            fb = (ib++)->second;
        }
        if (fa.kind != Factor::Kind::Super && fb.kind != Factor::Kind::Super) {
            if (fa.kind != fb.kind) return {0.0, 0.0};
            continue;
        }
        total *= factor_overlap(fa, fb);
        if (total == Complex{0.0, 0.0}) return total;
    }
    return total;
}

}  // namespace

Complex state_inner_product(const SparseState& a, const SparseState& b) {
    Complex total{0.0, 0.0};
    for (const auto& ta : a.terms) {
        for (const auto& tb : b.terms) {
            Complex ov = map_overlap(ta.factors, tb.factors);
            if (ov != Complex{0.0, 0.0}) total += std::conj(ta.amp) * tb.amp * ov;
        }
    }
    return total;
}

double state_distance(const SparseState& a, const SparseState& b) {
    // Cancel structurally equal terms first; the naive Gram form
    // ||a||^2 + ||b||^2 - 2 Re<a|b> cannot resolve distances below sqrt(eps).
    SparseState diff;
    diff.terms = a.terms;
    diff.terms.reserve(a.terms.size() + b.terms.size());
    for (ProductTerm t : b.terms) {
        t.amp = -t.amp;
        diff.terms.push_back(std::move(t));
    }
    diff.merge_and_prune(true);
    return std::sqrt(std::max(0.0, state_inner_product(diff, diff).real()));
}

double output_fidelity(const SparseState& state, const TargetState& target,
                       const Architecture& arch) {
    SparseState expanded = expand_output_basis(state, arch);

    // Strip output entries into the index; keep the QRAM factor map.
    struct OutTerm {
        Complex weight;                           // amp * conj(psi_j)
        std::vector<std::pair<int, Factor>> qram;
    };
    std::vector<OutTerm> terms;
    terms.reserve(expanded.terms.size());
    for (const auto& term : expanded.terms) {
        auto j = output_index(term, arch);
        OutTerm ot;
        ot.weight = term.amp * std::conj(target.amplitudes(*j));
        for (const auto& entry : term.factors) {
            if (!arch.is_output(entry.first)) ot.qram.push_back(entry);
        }
        if (ot.weight != Complex{0.0, 0.0}) terms.push_back(std::move(ot));
    }

    // <psi|rho_out|psi> = sum_{k,k'} w_k conj(w_k') <qram_k'|qram_k>
    double total = 0.0;
    for (size_t k = 0; k < terms.size(); ++k) {
        total += std::norm(terms[k].weight);
        for (size_t kp = k + 1; kp < terms.size(); ++kp) {
            Complex ov = map_overlap(terms[kp].qram, terms[k].qram);
            if (ov != Complex{0.0, 0.0}) {
                total += 2.0 * (terms[k].weight * std::conj(terms[kp].weight) * ov).real();
            }
        }
    }
    double f2 = std::clamp(total, 0.0, 1.0 + 1e-9);
    return std::sqrt(f2);
}

}  // namespace treeprep
