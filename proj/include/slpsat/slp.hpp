#pragma once

// Constant-free straight-line programs over Z[x]. A program is a node list
// where node 0 is always the constant 1 and node 1 is always the variable x;
// every further node combines two earlier nodes with +, - or *. Node sharing
// (a DAG, not a tree) is allowed and preserved by the text format, which is
// what keeps iterated-recursion programs short.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "slpsat/errors.hpp"

namespace slpsat {

enum class SlpOp : std::uint8_t { One, X, Add, Sub, Mul };

struct SlpNode {
    SlpOp op;
    std::uint32_t lhs = 0;
    std::uint32_t rhs = 0;

    bool operator==(const SlpNode&) const = default;
};

struct Slp {
    std::vector<SlpNode> nodes; // nodes[0] = One, nodes[1] = X
    std::uint32_t out = 0;

    Slp() : nodes{{SlpOp::One}, {SlpOp::X}}, out(0) {}

    // Number of derived nodes (the tau-style length measure).
    std::size_t length() const { return nodes.size() - 2; }

    bool operator==(const Slp&) const = default;
};

inline Slp one_program() { return Slp{}; }

inline Slp x_program() {
    Slp p;
    p.out = 1;
    return p;
}

struct SlpIssue {
    errc code;
    std::size_t index; // offending node index, or the out index
};

// Structural validation; empty result means every node invariant holds.
inline std::vector<SlpIssue> validate(const Slp& slp) {
    std::vector<SlpIssue> issues;
    if (slp.nodes.size() < 2 || slp.nodes[0].op != SlpOp::One || slp.nodes[1].op != SlpOp::X) {
        issues.push_back({errc::internal, 0});
        return issues;
    }
    for (std::size_t i = 2; i < slp.nodes.size(); ++i) {
        const SlpNode& n = slp.nodes[i];
        if (n.op == SlpOp::One || n.op == SlpOp::X) {
            issues.push_back({errc::internal, i});
            continue;
        }
        if (n.lhs >= i || n.rhs >= i) issues.push_back({errc::forward_reference, i});
    }
    if (slp.out >= slp.nodes.size()) issues.push_back({errc::bad_out_index, slp.out});
    return issues;
}

inline void validate_or_throw(const Slp& slp) {
    auto issues = validate(slp);
    if (!issues.empty())
        fail(issues.front().code, "invalid SLP", static_cast<long>(issues.front().index));
}

// Incremental program builder. Appends derived nodes and hands back indices;
// take() finalizes the program with a chosen output node.
class SlpBuilder {
public:
    SlpBuilder() = default;

    std::uint32_t one() const { return 0; }
    std::uint32_t x() const { return 1; }
    std::size_t size() const { return slp_.nodes.size(); }

    std::uint32_t add(std::uint32_t j, std::uint32_t k) { return push(SlpOp::Add, j, k); }
    std::uint32_t sub(std::uint32_t j, std::uint32_t k) { return push(SlpOp::Sub, j, k); }
    std::uint32_t mul(std::uint32_t j, std::uint32_t k) { return push(SlpOp::Mul, j, k); }

    // mul that skips the unit: mul(1, y) is y.
    std::uint32_t mul_opt(std::uint32_t j, std::uint32_t k) {
        if (j == one()) return k;
        if (k == one()) return j;
        return mul(j, k);
    }

    // Import all derived nodes of `f`; returns the index of f's output here.
    std::uint32_t append(const Slp& f) { return append_composed(f, x()); }

    // Import `f` with its x node rewired to `x_replacement`: computes
    // f(value at x_replacement).
    std::uint32_t append_composed(const Slp& f, std::uint32_t x_replacement) {
        require(x_replacement < size(), errc::forward_reference, "bad substitution index");
        std::vector<std::uint32_t> map(f.nodes.size());
        map[0] = one();
        map[1] = x_replacement;
        for (std::size_t i = 2; i < f.nodes.size(); ++i) {
            const SlpNode& n = f.nodes[i];
            map[i] = push(n.op, map[n.lhs], map[n.rhs]);
        }
        return map[f.out];
    }

    // Program computing the integer k. Length at most 2*bitlen(|k|) + 2:
    // positive constants are built by binary doubling, zero is 1-1, and
    // negative constants are 0 - |k|.
    std::uint32_t constant(const mpz_class& k) {
        if (k == 0) return sub(one(), one());
        if (k < 0) {
            std::uint32_t mag = constant(-k);
            std::uint32_t zero = sub(one(), one());
            return sub(zero, mag);
        }
        if (k == 1) return one();
        const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
        std::uint32_t acc = one();
        for (std::size_t b = bits - 1; b-- > 0;) {
            acc = add(acc, acc);
            if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(b))) acc = add(acc, one());
        }
        return acc;
    }

    // base^e by left-to-right square and multiply; e = 0 yields the One node.
    std::uint32_t power(std::uint32_t base, unsigned long e) {
        if (e == 0) return one();
        if (e == 1) return base;
        int top = 63;
        while (((e >> top) & 1UL) == 0) --top;
        std::uint32_t acc = base;
        for (int b = top - 1; b >= 0; --b) {
            acc = mul(acc, acc);
            if ((e >> b) & 1UL) acc = mul(acc, base);
        }
        return acc;
    }

    Slp take(std::uint32_t out_index) {
        require(out_index < size(), errc::bad_out_index, "output index past end");
        slp_.out = out_index;
        return std::move(slp_);
    }

private:
    std::uint32_t push(SlpOp op, std::uint32_t j, std::uint32_t k) {
        const std::uint32_t i = static_cast<std::uint32_t>(slp_.nodes.size());
        require(j < i && k < i, errc::forward_reference, "operand index not yet defined", i);
        slp_.nodes.push_back(SlpNode{op, j, k});
        return i;
    }

    Slp slp_;
};

inline Slp slp_from_integer(const mpz_class& k) {
    SlpBuilder b;
    return b.take(b.constant(k));
}

// f o g. Derived-node count is exactly length(f) + length(g).
inline Slp compose(const Slp& f, const Slp& g) {
    validate_or_throw(f);
    validate_or_throw(g);
    SlpBuilder b;
    std::uint32_t inner = b.append(g);
    std::uint32_t outer = b.append_composed(f, inner);
    return b.take(outer);
}

inline Slp slp_add(const Slp& f, const Slp& g) {
    SlpBuilder b;
    std::uint32_t fo = b.append(f);
    std::uint32_t go = b.append(g);
    return b.take(b.add(fo, go));
}

inline Slp slp_sub(const Slp& f, const Slp& g) {
    SlpBuilder b;
    std::uint32_t fo = b.append(f);
    std::uint32_t go = b.append(g);
    return b.take(b.sub(fo, go));
}

inline Slp slp_mul(const Slp& f, const Slp& g) {
    SlpBuilder b;
    std::uint32_t fo = b.append(f);
    std::uint32_t go = b.append(g);
    return b.take(b.mul(fo, go));
}

inline Slp slp_square(const Slp& f) {
    SlpBuilder b;
    std::uint32_t fo = b.append(f);
    return b.take(b.mul(fo, fo));
}

inline Slp slp_power(const Slp& f, unsigned long e) {
    if (e == 0) return one_program();
    SlpBuilder b;
    std::uint32_t fo = b.append(f);
    return b.take(b.power(fo, e));
}

// Formal per-node degree bound: max over +/- and sum over *. An upper bound
// on the true degree, tight for cancellation-free programs.
inline mpz_class degree_bound(const Slp& slp) {
    validate_or_throw(slp);
    std::vector<mpz_class> deg(slp.nodes.size());
    deg[0] = 0;
    deg[1] = 1;
    for (std::size_t i = 2; i < slp.nodes.size(); ++i) {
        const SlpNode& n = slp.nodes[i];
        deg[i] = (n.op == SlpOp::Mul) ? deg[n.lhs] + deg[n.rhs]
                                      : std::max(deg[n.lhs], deg[n.rhs]);
    }
    return deg[slp.out];
}

// Indices of nodes reachable from the output, in evaluation order.
inline std::vector<std::uint32_t> reachable_nodes(const Slp& slp) {
    std::vector<bool> seen(slp.nodes.size(), false);
    std::vector<std::uint32_t> stack{slp.out};
    seen[slp.out] = true;
    while (!stack.empty()) {
        std::uint32_t i = stack.back();
        stack.pop_back();
        const SlpNode& n = slp.nodes[i];
        if (n.op == SlpOp::One || n.op == SlpOp::X) continue;
        for (std::uint32_t opnd : {n.lhs, n.rhs}) {
            if (!seen[opnd]) {
                seen[opnd] = true;
                stack.push_back(opnd);
            }
        }
    }
    std::vector<std::uint32_t> order;
    for (std::uint32_t i = 0; i < slp.nodes.size(); ++i)
        if (seen[i]) order.push_back(i);
    return order;
}

// ---- slpv1 text format -----------------------------------------------------
//
//   slpv1
//   add J K | sub J K | mul J K     (instruction i, 1-based, defines node i+1)
//   out I
//
// Node 0 is the implicit One, node 1 the implicit X. Lines starting with '#'
// are comments. Canonical serialization emits no comments and ends with a
// trailing newline.

inline std::string serialize_slp(const Slp& slp) {
    validate_or_throw(slp);
    std::ostringstream os;
    os << "slpv1\n";
    for (std::size_t i = 2; i < slp.nodes.size(); ++i) {
        const SlpNode& n = slp.nodes[i];
        const char* mn = n.op == SlpOp::Add ? "add" : (n.op == SlpOp::Sub ? "sub" : "mul");
        os << mn << ' ' << n.lhs << ' ' << n.rhs << '\n';
    }
    os << "out " << slp.out << '\n';
    return os.str();
}

inline Slp parse_slp(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    long lineno = 0;
    bool saw_version = false;
    bool saw_out = false;
    Slp slp;

    auto parse_index = [&](const std::string& tok) -> std::uint32_t {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &pos);
        } catch (const std::exception&) {
            fail(errc::syntax_error, "bad index '" + tok + "'", lineno);
        }
        require(pos == tok.size(), errc::syntax_error, "bad index '" + tok + "'", lineno);
        return static_cast<std::uint32_t>(v);
    };

    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        require(!saw_out, errc::syntax_error, "content after out line", lineno);
        std::istringstream ls(line);
        std::string op, a, b, extra;
        ls >> op;
        if (!saw_version) {
            require(op == "slpv1" && !(ls >> extra), errc::syntax_error,
                    "expected slpv1 header", lineno);
            saw_version = true;
            continue;
        }
        if (op == "out") {
            require(static_cast<bool>(ls >> a) && !(ls >> extra), errc::syntax_error,
                    "out expects one index", lineno);
            std::uint32_t idx = parse_index(a);
            require(idx < slp.nodes.size(), errc::bad_out_index, "out index past end", lineno);
            slp.out = idx;
            saw_out = true;
            continue;
        }
        SlpOp o;
        if (op == "add") o = SlpOp::Add;
        else if (op == "sub") o = SlpOp::Sub;
        else if (op == "mul") o = SlpOp::Mul;
        else fail(errc::syntax_error, "unknown instruction '" + op + "'", lineno);
        require(static_cast<bool>(ls >> a >> b) && !(ls >> extra), errc::syntax_error,
                "instruction expects two indices", lineno);
        const std::uint32_t i = static_cast<std::uint32_t>(slp.nodes.size());
        std::uint32_t j = parse_index(a);
        std::uint32_t k = parse_index(b);
        require(j < i && k < i, errc::forward_reference,
                "operand index not yet defined", lineno);
        slp.nodes.push_back(SlpNode{o, j, k});
    }
    require(saw_version, errc::syntax_error, "missing slpv1 header", lineno);
    require(saw_out, errc::syntax_error, "missing out line", lineno);
    return slp;
}

} // namespace slpsat
