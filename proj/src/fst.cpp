#include "depthlab/fst.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "depthlab/errors.hpp"

namespace depthlab {

std::uint32_t Transducer::max_out_len() const {
    std::size_t m = 0;
    for (const auto& st : edges)
        for (const auto& e : st) m = std::max(m, e.out.size());
    return static_cast<std::uint32_t>(m);
}

void validate(const Transducer& m) {
    if (m.state_count == 0) throw ConfigError("transducer needs at least one state");
    if (m.edges.size() != m.state_count) throw ConfigError("transition table is not total");
    if (m.start >= m.state_count) throw ConfigError("start state out of range");
    for (const auto& st : m.edges)
        for (const auto& e : st) {
            if (e.to >= m.state_count) throw ConfigError("transition target out of range");
            if (!is_bits(e.out)) throw ConfigError("output label is not a bit string");
        }
}

RunResult run(const Transducer& m, const Bits& input) {
    RunResult r;
    r.final_state = m.start;
    for (char c : input) {
        const auto& e = m.edge(r.final_state, c == '1');
        r.output += e.out;
        r.final_state = e.to;
    }
    return r;
}

std::pair<std::uint64_t, std::uint32_t> run_cost(const Transducer& m, const Bits& input) {
    std::uint64_t len = 0;
    std::uint32_t q = m.start;
    for (char c : input) {
        const auto& e = m.edge(q, c == '1');
        len += e.out.size();
        q = e.to;
    }
    return {len, q};
}

namespace {

// Reachable states in BFS order (0-edge first) with their access strings.
struct Reach {
    std::vector<std::uint32_t> order;
    std::vector<Bits> access;  // indexed by state id; meaningful for reached states
    std::vector<bool> seen;
};

Reach reach_from_start(const Transducer& m) {
    Reach r;
    r.access.resize(m.state_count);
    r.seen.assign(m.state_count, false);
    std::deque<std::uint32_t> queue{m.start};
    r.seen[m.start] = true;
    while (!queue.empty()) {
        std::uint32_t q = queue.front();
        queue.pop_front();
        r.order.push_back(q);
        for (int b = 0; b < 2; ++b) {
            std::uint32_t t = m.edge(q, b).to;
            if (!r.seen[t]) {
                r.seen[t] = true;
                r.access[t] = r.access[q] + char('0' + b);
                queue.push_back(t);
            }
        }
    }
    return r;
}

// A reachable cycle of lambda-output edges means T(x) = T(x z) with equal final
// states for the access string x of any state on the cycle.
std::optional<std::pair<Bits, Bits>> lambda_cycle_witness(const Transducer& m, const Reach& reach) {
    enum { White, Grey, Black };
    std::vector<int> color(m.state_count, White);
    std::vector<std::pair<std::uint32_t, char>> stack;  // (state, label taken from it)

    std::function<std::optional<std::pair<Bits, Bits>>(std::uint32_t)> dfs =
        [&](std::uint32_t q) -> std::optional<std::pair<Bits, Bits>> {
        color[q] = Grey;
        for (int b = 0; b < 2; ++b) {
            const auto& e = m.edge(q, b);
            if (!e.out.empty()) continue;
            if (color[e.to] == Grey) {
                // cycle: e.to -> ... -> q -> e.to, all lambda edges
                Bits z;
                auto from = stack.begin();
                while (from != stack.end() && from->first != e.to) ++from;
                for (auto it = from; it != stack.end(); ++it) z.push_back(it->second);
                z.push_back(char('0' + b));
                const Bits& x = reach.access[e.to];
                return std::make_pair(x, x + z);
            }
            if (color[e.to] == White) {
                stack.emplace_back(q, char('0' + b));
                if (auto w = dfs(e.to)) return w;
                stack.pop_back();
            }
        }
        color[q] = Black;
        return std::nullopt;
    };

    for (std::uint32_t q : reach.order)
        if (color[q] == White)
            if (auto w = dfs(q)) return w;
    return std::nullopt;
}

}  // namespace

IlVerdict check_il(const Transducer& m, std::uint64_t search_ceiling) {
    validate(m);
    const std::uint64_t k = m.state_count;
    const std::uint64_t lmax = std::max<std::uint64_t>(1, m.max_out_len());
    const std::uint64_t bound = k * k * lmax;
    if (bound > search_ceiling)
        throw ConfigError("check_il: machine too large for the configured search ceiling");

    Reach reach = reach_from_start(m);

    if (auto w = lambda_cycle_witness(m, reach)) return {false, w};

    // Pair configurations over runs that diverged at some reachable state.
    // Branch X took bit 0 at the divergence point, branch Y took bit 1.
    struct Node {
        std::uint32_t sx, sy;
        Bits overhang;  // unmatched output suffix of the branch that is ahead
        bool x_ahead;
        int parent;            // -1 for divergence roots
        std::uint32_t div;     // divergence state (roots only)
        char addx, addy;       // bits appended relative to parent ('\0' = none)
    };
    std::vector<Node> nodes;
    std::map<std::tuple<std::uint32_t, std::uint32_t, Bits, bool>, int> seen;
    std::deque<int> queue;

    auto reconstruct = [&](int idx) {
        Bits x, y;
        int i = idx;
        while (nodes[i].parent >= 0) {
            if (nodes[i].addx) x.insert(x.begin(), nodes[i].addx);
            if (nodes[i].addy) y.insert(y.begin(), nodes[i].addy);
            i = nodes[i].parent;
        }
        const Bits& h = reach.access[nodes[i].div];
        return std::make_pair(h + '0' + x, h + '1' + y);
    };

    std::optional<std::pair<Bits, Bits>> witness;
    auto push = [&](Node n) -> bool {
        if (n.overhang.empty() && n.sx == n.sy) {
            nodes.push_back(n);
            witness = reconstruct(static_cast<int>(nodes.size()) - 1);
            return true;
        }
        if (n.overhang.size() > bound) return false;
        auto key = std::make_tuple(n.sx, n.sy, n.overhang, n.x_ahead);
        if (seen.count(key)) return false;
        seen[key] = static_cast<int>(nodes.size());
        nodes.push_back(n);
        queue.push_back(static_cast<int>(nodes.size()) - 1);
        return false;
    };

    for (std::uint32_t s : reach.order) {
        const Bits& u = m.edge(s, 0).out;
        const Bits& v = m.edge(s, 1).out;
        Node n{m.edge(s, 0).to, m.edge(s, 1).to, {}, true, -1, s, '\0', '\0'};
        if (u.size() >= v.size() && u.compare(0, v.size(), v) == 0) {
            n.overhang = u.substr(v.size());
            n.x_ahead = true;
        } else if (v.compare(0, u.size(), u) == 0) {
            n.overhang = v.substr(u.size());
            n.x_ahead = false;
        } else {
            continue;  // outputs already incomparable, no collision possible below
        }
        if (push(n)) return {false, witness};
    }

    while (!queue.empty()) {
        int idx = queue.front();
        queue.pop_front();
        Node cur = nodes[idx];  // copy: nodes may reallocate
        if (cur.overhang.empty()) {
            // both branches advance one input bit
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const Bits& u = m.edge(cur.sx, a).out;
                    const Bits& v = m.edge(cur.sy, b).out;
                    Node n{m.edge(cur.sx, a).to, m.edge(cur.sy, b).to,
                           {}, true, idx, 0, char('0' + a), char('0' + b)};
                    if (u.size() >= v.size() && u.compare(0, v.size(), v) == 0) {
                        n.overhang = u.substr(v.size());
                        n.x_ahead = true;
                    } else if (v.compare(0, u.size(), u) == 0) {
                        n.overhang = v.substr(u.size());
                        n.x_ahead = false;
                    } else {
                        continue;
                    }
                    if (push(n)) return {false, witness};
                }
        } else {
            // only the branch that is behind advances
            std::uint32_t behind = cur.x_ahead ? cur.sy : cur.sx;
            for (int b = 0; b < 2; ++b) {
                const Bits& w = m.edge(behind, b).out;
                std::uint32_t to = m.edge(behind, b).to;
                Node n = cur;
                n.parent = idx;
                n.addx = cur.x_ahead ? '\0' : char('0' + b);
                n.addy = cur.x_ahead ? char('0' + b) : '\0';
                (cur.x_ahead ? n.sy : n.sx) = to;
                if (w.size() <= cur.overhang.size() &&
                    cur.overhang.compare(0, w.size(), w) == 0) {
                    n.overhang = cur.overhang.substr(w.size());
                } else if (w.compare(0, cur.overhang.size(), cur.overhang) == 0) {
                    n.overhang = w.substr(cur.overhang.size());
                    n.x_ahead = !cur.x_ahead;
                } else {
                    continue;
                }
                if (push(n)) return {false, witness};
            }
        }
    }
    return {true, std::nullopt};
}

Transducer canonicalize(const Transducer& m) {
    validate(m);
    Reach reach = reach_from_start(m);
    std::vector<std::uint32_t> rename(m.state_count, 0);
    for (std::uint32_t i = 0; i < reach.order.size(); ++i) rename[reach.order[i]] = i;
    Transducer out;
    out.state_count = static_cast<std::uint32_t>(reach.order.size());
    out.start = 0;
    out.edges.resize(out.state_count);
    for (std::uint32_t i = 0; i < out.state_count; ++i) {
        std::uint32_t old = reach.order[i];
        for (int b = 0; b < 2; ++b)
            out.edges[i][b] = {rename[m.edge(old, b).to], m.edge(old, b).out};
    }
    return out;
}

namespace {

// Output label options ordered by length then value: lambda, 0, 1, 00, 01, ...
std::vector<Bits> output_options(std::uint32_t l_max) {
    std::vector<Bits> opts{""};
    for (std::uint32_t len = 1; len <= l_max; ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v)
            opts.push_back(to_bits(v, len));
    return opts;
}

// True iff BFS first-visit order from state 0 (0-edge first) is 0,1,...,k-1.
bool canonical_numbering(const Transducer& m) {
    std::uint32_t next = 1;
    std::vector<bool> seen(m.state_count, false);
    seen[0] = true;
    std::deque<std::uint32_t> queue{0};
    std::uint32_t visited = 0;
    while (!queue.empty()) {
        std::uint32_t q = queue.front();
        queue.pop_front();
        ++visited;
        for (int b = 0; b < 2; ++b) {
            std::uint32_t t = m.edge(q, b).to;
            if (!seen[t]) {
                if (t != next) return false;
                seen[t] = true;
                ++next;
                queue.push_back(t);
            }
        }
    }
    return visited == m.state_count;
}

}  // namespace

std::uint64_t enumeration_raw_space(std::uint32_t k, std::uint32_t l_max) {
    const std::uint64_t nout = (std::uint64_t{1} << (l_max + 1)) - 1;
    std::uint64_t total = 0;
    for (std::uint32_t kk = 1; kk <= k; ++kk) {
        std::uint64_t per_edge = kk * nout;
        std::uint64_t space = 1;
        for (std::uint32_t e = 0; e < 2 * kk; ++e) {
            if (space > std::uint64_t{1} << 62) return std::uint64_t{1} << 63;
            space *= per_edge;
        }
        total += space;
    }
    return total;
}

void enumerate_ilfsts(std::uint32_t k, std::uint32_t l_max,
                      const std::function<void(const Transducer&)>& yield,
                      std::uint64_t ceiling) {
    if (k < 1) throw ConfigError("enumerate_ilfsts: k must be >= 1");
    if (l_max < 1) throw ConfigError("enumerate_ilfsts: l_max must be >= 1");
    if (enumeration_raw_space(k, l_max) > ceiling)
        throw ConfigError("enumerate_ilfsts: raw space exceeds the enumeration ceiling");

    const std::vector<Bits> opts = output_options(l_max);
    const std::uint32_t nout = static_cast<std::uint32_t>(opts.size());

    for (std::uint32_t kk = 1; kk <= k; ++kk) {
        const std::uint32_t per_edge = kk * nout;
        const std::uint32_t nedges = 2 * kk;
        std::vector<std::uint32_t> digit(nedges, 0);

        Transducer m;
        m.state_count = kk;
        m.start = 0;
        m.edges.resize(kk);

        bool done = false;
        while (!done) {
            for (std::uint32_t e = 0; e < nedges; ++e)
                m.edges[e / 2][e % 2] = {digit[e] / nout, opts[digit[e] % nout]};
            if (canonical_numbering(m) && check_il(m).lossless) yield(m);

            // mixed-radix increment, last edge fastest
            for (std::uint32_t e = nedges; e-- > 0;) {
                if (++digit[e] < per_edge) break;
                digit[e] = 0;
                if (e == 0) done = true;
            }
        }
    }
}

std::vector<Transducer> enumerate_ilfsts_vec(std::uint32_t k, std::uint32_t l_max,
                                             std::uint64_t ceiling) {
    std::vector<Transducer> out;
    enumerate_ilfsts(k, l_max, [&](const Transducer& m) { out.push_back(m); }, ceiling);
    return out;
}

BestCompression best_compression(const Bits& x, std::uint32_t k, std::uint32_t l_max,
                                 bool include_header, const std::vector<Transducer>* family) {
    if (x.empty()) throw ConfigError("best_compression: input must be nonempty");
    BestCompression best;
    best.perf.value = -1.0;
    auto consider = [&](const Transducer& m) {
        std::uint64_t cost = run_cost(m, x).first;
        if (include_header) cost += 8 * serialize_fst(m).size();
        double perf = clamp_perf(1.0 - static_cast<double>(cost) / static_cast<double>(x.size())).value;
        if (perf > best.perf.value) {
            best.perf.value = perf;
            best.machine = m;
        }
    };
    if (family) {
        for (const auto& m : *family) consider(m);
    } else {
        enumerate_ilfsts(k, l_max, consider);
    }
    if (best.perf.value < 0.0) throw ConfigError("best_compression: empty machine family");
    return best;
}

std::string serialize_fst(const Transducer& m) {
    Transducer c = canonicalize(m);
    std::ostringstream os;
    os << "states " << c.state_count << "\n";
    os << "start " << c.start << "\n";
    for (std::uint32_t q = 0; q < c.state_count; ++q)
        for (int b = 0; b < 2; ++b) {
            const auto& e = c.edge(q, b);
            os << "edge " << q << " " << b << " " << e.to << " "
               << (e.out.empty() ? "-" : e.out) << "\n";
        }
    return os.str();
}

Transducer parse_fst(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    Transducer m;
    bool have_states = false, have_start = false;
    std::vector<std::array<bool, 2>> filled;

    while (std::getline(is, line)) {
        ++lineno;
        std::string stripped = line.substr(0, line.find('#'));
        std::istringstream ls(stripped);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "states") {
            if (have_states) throw ParseError("duplicate states line", lineno);
            long long k;
            if (!(ls >> k) || k < 1) throw ParseError("bad state count", lineno);
            m.state_count = static_cast<std::uint32_t>(k);
            m.edges.resize(m.state_count);
            filled.assign(m.state_count, {false, false});
            have_states = true;
        } else if (word == "start") {
            if (!have_states) throw ParseError("start before states", lineno);
            if (have_start) throw ParseError("duplicate start line", lineno);
            long long q;
            if (!(ls >> q) || q < 0 || q >= m.state_count) throw ParseError("bad start state", lineno);
            m.start = static_cast<std::uint32_t>(q);
            have_start = true;
        } else if (word == "edge") {
            if (!have_states) throw ParseError("edge before states", lineno);
            long long q, b, to;
            std::string out;
            if (!(ls >> q >> b >> to >> out)) throw ParseError("malformed edge line", lineno);
            if (q < 0 || q >= m.state_count) throw ParseError("edge source out of range", lineno);
            if (b != 0 && b != 1) throw ParseError("edge bit must be 0 or 1", lineno);
            if (to < 0 || to >= m.state_count) throw ParseError("edge target out of range", lineno);
            if (out == "-") out.clear();
            if (!is_bits(out)) throw ParseError("edge output must be bits or '-'", lineno);
            if (filled[q][b]) throw ParseError("duplicate edge", lineno);
            filled[q][b] = true;
            m.edges[q][b] = {static_cast<std::uint32_t>(to), out};
        } else {
            throw ParseError("unknown directive '" + word + "'", lineno);
        }
        std::string extra;
        if (ls >> extra) throw ParseError("trailing tokens", lineno);
    }
    if (!have_states) throw ParseError("missing states line");
    if (!have_start) throw ParseError("missing start line");
    for (std::uint32_t q = 0; q < m.state_count; ++q)
        for (int b = 0; b < 2; ++b)
            if (!filled[q][b])
                throw ParseError("missing edge " + std::to_string(q) + " " + std::to_string(b));
    validate(m);
    return m;
}

}  // namespace depthlab
