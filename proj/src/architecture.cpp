#include "treeprep/architecture.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace treeprep {

std::string protocol_name(Protocol p) {
    return p == Protocol::TwoPerNode ? "2pn" : "3pn";
}

Protocol protocol_from_name(const std::string& s) {
    if (s == "2pn") return Protocol::TwoPerNode;
    if (s == "3pn") return Protocol::ThreePerNode;
    throw std::invalid_argument("unknown protocol: " + s);
}

std::string role_name(Role r) {
    switch (r) {
        case Role::Upper: return "U";
        case Role::Middle: return "M";
        case Role::Lower: return "D";
        case Role::Output: return "O";
    }
    return "?";
}

Role role_from_name(const std::string& s) {
    if (s == "U") return Role::Upper;
    if (s == "M") return Role::Middle;
    if (s == "D") return Role::Lower;
    if (s == "O") return Role::Output;
    throw std::invalid_argument("unknown qubit role: " + s);
}

std::string qubit_label(const QubitId& q) {
    std::ostringstream out;
    if (q.role == Role::Output) {
        out << "O[" << q.layer << "]";
    } else {
        out << role_name(q.role) << "[" << q.layer << "," << q.index << "]";
    }
    return out.str();
}

void Architecture::add_edge(int a, int b) {
    adj_[static_cast<size_t>(a)].push_back(b);
    adj_[static_cast<size_t>(b)].push_back(a);
    ++edge_count_;
}

std::shared_ptr<const Architecture> Architecture::make(Protocol variant, int n) {
    if (n < 1) throw std::invalid_argument("architecture: n must be >= 1");

    auto arch = std::make_shared<Architecture>();
    arch->variant_ = variant;
    arch->n_ = n;
    const bool three = variant == Protocol::ThreePerNode;

    arch->upper_.resize(static_cast<size_t>(n) + 1);
    arch->middle_.resize(static_cast<size_t>(n) + 1);
    arch->lower_.resize(static_cast<size_t>(n) + 1);

    auto push = [&arch](QubitId q, std::vector<int>& table) {
        table.push_back(static_cast<int>(arch->qubits_.size()));
        arch->qubits_.push_back(q);
    };

    for (int l = 0; l <= n; ++l) {
        const int width = 1 << l;
        for (int j = 0; j < width; ++j) push({Role::Upper, l, j}, arch->upper_[l]);
        if (three) {
            // 3pn keeps the full node stack at the leaf layer too; leaf M/D
            // are never gated and simply idle.
            for (int j = 0; j < width; ++j) push({Role::Middle, l, j}, arch->middle_[l]);
            for (int j = 0; j < width; ++j) push({Role::Lower, l, j}, arch->lower_[l]);
        } else if (l < n) {
            for (int j = 0; j < width; ++j) push({Role::Lower, l, j}, arch->lower_[l]);
        }
    }
    for (int k = 1; k <= n; ++k) {
        arch->output_.push_back(static_cast<int>(arch->qubits_.size()));
        arch->qubits_.push_back({Role::Output, k, k});
    }

    arch->adj_.resize(arch->qubits_.size());
    for (int l = 0; l <= n; ++l) {
        const int width = 1 << l;
        for (int j = 0; j < width; ++j) {
            if (three) {
                arch->add_edge(arch->upper_[l][j], arch->middle_[l][j]);
                arch->add_edge(arch->middle_[l][j], arch->lower_[l][j]);
            } else if (l < n) {
                arch->add_edge(arch->upper_[l][j], arch->lower_[l][j]);
            }
            if (l < n) {
                arch->add_edge(arch->lower_[l][j], arch->upper_[l + 1][2 * j]);
                arch->add_edge(arch->lower_[l][j], arch->upper_[l + 1][2 * j + 1]);
            }
        }
    }
    arch->add_edge(arch->output_[0], arch->upper_[0][0]);
    for (int k = 1; k < n; ++k) arch->add_edge(arch->output_[k - 1], arch->output_[k]);

    for (auto& lst : arch->adj_) std::sort(lst.begin(), lst.end());
    return arch;
}

bool Architecture::adjacent(int a, int b) const {
    const auto& lst = adj_[static_cast<size_t>(a)];
    return std::binary_search(lst.begin(), lst.end(), b);
}

int Architecture::max_degree() const {
    size_t best = 0;
    for (const auto& lst : adj_) best = std::max(best, lst.size());
    return static_cast<int>(best);
}

bool Architecture::has(const QubitId& q) const {
    if (q.role == Role::Output) return q.layer >= 1 && q.layer <= n_;
    if (q.layer < 0 || q.layer > n_) return false;
    if (q.index < 0 || q.index >= (1 << q.layer)) return false;
    const bool three = variant_ == Protocol::ThreePerNode;
    if (q.role == Role::Middle) return three;
    if (q.role == Role::Lower) return three || q.layer < n_;
    return true;
}

int Architecture::id_of(const QubitId& q) const {
    if (!has(q)) throw std::invalid_argument("no such qubit: " + qubit_label(q));
    switch (q.role) {
        case Role::Upper: return upper_[static_cast<size_t>(q.layer)][static_cast<size_t>(q.index)];
        case Role::Middle: return middle_[static_cast<size_t>(q.layer)][static_cast<size_t>(q.index)];
        case Role::Lower: return lower_[static_cast<size_t>(q.layer)][static_cast<size_t>(q.index)];
        case Role::Output: return output_[static_cast<size_t>(q.layer) - 1];
    }
    throw std::invalid_argument("bad role");
}

std::optional<int> Architecture::parent(int id) const {
    if (id < 0 || id >= qubit_count()) throw std::invalid_argument("parent: unknown qubit id");
    const QubitId& q = qubit(id);
    const bool three = variant_ == Protocol::ThreePerNode;
    switch (q.role) {
        case Role::Output:
            if (q.layer >= n_) return std::nullopt;
            return output(q.layer + 1);
        case Role::Upper:
            if (q.layer == 0) return output(1);
            return lower(q.layer - 1, q.index / 2);
        case Role::Middle:
            return upper(q.layer, q.index);
        case Role::Lower:
            return three ? middle(q.layer, q.index) : upper(q.layer, q.index);
    }
    return std::nullopt;
}

std::vector<int> Architecture::ancestors(int l, int j) const {
    std::vector<int> chain;
    int cur = upper(l, j);
    for (;;) {
        auto p = parent(cur);
        if (!p) break;
        chain.push_back(*p);
        cur = *p;
    }
    return chain;
}

std::vector<int> Architecture::hat_ancestors(int l, int j) const {
    std::vector<int> set = ancestors(l, j);
    const size_t anc = set.size();
    for (size_t i = 0; i < anc; ++i) {
        const auto& nb = neighbors(set[i]);
        set.insert(set.end(), nb.begin(), nb.end());
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return set;
}

}  // namespace treeprep
