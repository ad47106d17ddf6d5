#include "conekit/netmodel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace conekit {

Reaction Reaction::make(QVec reactant, QVec product, bool reversible) {
    if (reactant.size() != product.size())
        throw std::invalid_argument("complex dimension mismatch");
    for (size_t i = 0; i < reactant.size(); ++i) {
        if (reactant[i] < 0 || product[i] < 0 || reactant[i].get_den() != 1 ||
            product[i].get_den() != 1)
            throw std::invalid_argument("complex coefficients must be nonnegative integers");
        if (reactant[i] != 0 && product[i] != 0)
            throw std::invalid_argument("catalytic reaction: species on both sides");
    }
    Reaction r;
    r.gamma = vec_sub(product, reactant);
    if (is_zero(r.gamma)) throw std::invalid_argument("reaction vector is zero");
    r.reactant = std::move(reactant);
    r.product = std::move(product);
    r.reversible = reversible;
    return r;
}

Reaction Reaction::from_vector(const QVec& gamma, bool reversible) {
    QVec a(gamma.size(), Rat(0)), b(gamma.size(), Rat(0));
    for (size_t i = 0; i < gamma.size(); ++i) {
        if (gamma[i].get_den() != 1)
            throw std::invalid_argument("reaction vector must be integral");
        if (gamma[i] < 0)
            a[i] = -gamma[i];
        else
            b[i] = gamma[i];
    }
    return make(std::move(a), std::move(b), reversible);
}

std::vector<size_t> Reaction::kinetic_support() const {
    std::vector<size_t> idx;
    for (size_t i = 0; i < gamma.size(); ++i) {
        if (reversible ? gamma[i] != 0 : gamma[i] < 0) idx.push_back(i);
    }
    return idx;
}

QMat ReactionNetwork::stoichiometric_matrix() const {
    std::vector<QVec> cols;
    cols.reserve(reactions.size());
    for (const auto& r : reactions) cols.push_back(r.gamma);
    return QMat::from_columns(cols, species.size());
}

namespace {

struct Token {
    enum Kind { Int, Ident, Plus, Arrow, RevArrow, Empty, End } kind;
    std::string text;
    int col;
};

std::vector<Token> tokenize_line(const std::string& line, int line_no) {
    std::vector<Token> toks;
    size_t i = 0;
    auto col = [&] { return static_cast<int>(i) + 1; };
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') break;
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '+') {
            toks.push_back({Token::Plus, "+", col()});
            ++i;
            continue;
        }
        if (line.compare(i, 3, "<=>") == 0) {
            toks.push_back({Token::RevArrow, "<=>", col()});
            i += 3;
            continue;
        }
        if (line.compare(i, 2, "=>") == 0) {
            toks.push_back({Token::Arrow, "=>", col()});
            i += 2;
            continue;
        }
        if (line.compare(i, 3, "\xE2\x88\x85") == 0) {  // empty-set glyph
            toks.push_back({Token::Empty, "0", col()});
            i += 3;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            int start = col();
            std::string num;
            while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i])))
                num.push_back(line[i++]);
            toks.push_back({Token::Int, num, start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            int start = col();
            std::string id;
            while (i < line.size() &&
                   (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_'))
                id.push_back(line[i++]);
            if (id == "empty")
                toks.push_back({Token::Empty, "0", start});
            else
                toks.push_back({Token::Ident, id, start});
            continue;
        }
        throw ParseError(line_no, col(), std::string("unexpected character '") + c + "'");
    }
    toks.push_back({Token::End, "", static_cast<int>(line.size()) + 1});
    return toks;
}

// Sparse complex: species name -> coefficient.
using SparseComplex = std::vector<std::pair<std::string, long>>;

SparseComplex parse_complex(const std::vector<Token>& toks, size_t& pos, int line_no) {
    const Token& first = toks[pos];
    if (first.kind == Token::Empty) {
        ++pos;
        return {};
    }
    if (first.kind == Token::Int && first.text == "0") {
        const Token& next = toks[pos + 1];
        if (next.kind == Token::Arrow || next.kind == Token::RevArrow || next.kind == Token::End) {
            ++pos;
            return {};
        }
    }
    SparseComplex terms;
    for (;;) {
        long coeff = 1;
        if (toks[pos].kind == Token::Int) {
            coeff = std::stol(toks[pos].text);
            if (coeff == 0)
                throw ParseError(line_no, toks[pos].col, "zero coefficient in complex");
            ++pos;
        }
        if (toks[pos].kind != Token::Ident)
            throw ParseError(line_no, toks[pos].col, "expected species identifier");
        terms.emplace_back(toks[pos].text, coeff);
        ++pos;
        if (toks[pos].kind == Token::Plus) {
            ++pos;
            continue;
        }
        break;
    }
    return terms;
}

}  // namespace

ParseResult parse_network(const std::string& text) {
    ParseResult result;
    ReactionNetwork& net = result.network;
    std::map<std::string, size_t> species_index;
    auto intern = [&](const std::string& name) {
        auto it = species_index.find(name);
        if (it != species_index.end()) return it->second;
        size_t idx = net.species.size();
        net.species.push_back(name);
        species_index.emplace(name, idx);
        return idx;
    };

    struct RawReaction {
        SparseComplex lhs, rhs;
        bool reversible;
        int line_no;
    };
    std::vector<RawReaction> raw;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<Token> toks = tokenize_line(line, line_no);
        if (toks.size() == 1) continue;  // blank or comment-only
        size_t pos = 0;
        SparseComplex lhs = parse_complex(toks, pos, line_no);
        bool reversible;
        if (toks[pos].kind == Token::RevArrow)
            reversible = true;
        else if (toks[pos].kind == Token::Arrow)
            reversible = false;
        else
            throw ParseError(line_no, toks[pos].col, "expected '=>' or '<=>'");
        ++pos;
        SparseComplex rhs = parse_complex(toks, pos, line_no);
        if (toks[pos].kind != Token::End)
            throw ParseError(line_no, toks[pos].col, "trailing input after reaction");
        for (const auto& [name, coeff] : lhs) intern(name);
        for (const auto& [name, coeff] : rhs) intern(name);
        raw.push_back({std::move(lhs), std::move(rhs), reversible, line_no});
    }
    if (raw.empty()) throw ParseError(line_no, 1, "no reactions in input");

    size_t n = net.species.size();
    std::vector<int> first_line;
    for (const auto& rr : raw) {
        QVec a(n, Rat(0)), b(n, Rat(0));
        for (const auto& [name, coeff] : rr.lhs) a[species_index[name]] += coeff;
        for (const auto& [name, coeff] : rr.rhs) b[species_index[name]] += coeff;
        for (size_t i = 0; i < n; ++i)
            if (a[i] != 0 && b[i] != 0)
                throw ParseError(rr.line_no, 1,
                                 "catalytic reaction: species '" + net.species[i] +
                                     "' appears on both sides");
        Reaction reaction;
        try {
            reaction = Reaction::make(std::move(a), std::move(b), rr.reversible);
        } catch (const std::invalid_argument& e) {
            throw ParseError(rr.line_no, 1, e.what());
        }
        for (size_t k = 0; k < net.reactions.size(); ++k) {
            const Reaction& prev = net.reactions[k];
            bool dup = prev == reaction;
            if (!dup && reaction.reversible && prev.reversible)
                dup = prev.reactant == reaction.product && prev.product == reaction.reactant;
            if (dup) {
                result.warnings.push_back("line " + std::to_string(rr.line_no) +
                                          ": duplicate reaction (first seen at line " +
                                          std::to_string(first_line[k]) + ")");
                break;
            }
        }
        net.reactions.push_back(std::move(reaction));
        first_line.push_back(rr.line_no);
    }
    return result;
}

namespace {

std::string render_complex(const ReactionNetwork& net, const QVec& c) {
    std::string out;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (c[i] != 1) out += c[i].get_num().get_str();
        out += net.species[i];
    }
    return out.empty() ? "0" : out;
}

}  // namespace

std::string render(const ReactionNetwork& net) {
    std::string out;
    for (const auto& r : net.reactions) {
        out += render_complex(net, r.reactant);
        out += r.reversible ? " <=> " : " => ";
        out += render_complex(net, r.product);
        out += "\n";
    }
    return out;
}

ReactionNetwork to_irreversible(const ReactionNetwork& net) {
    ReactionNetwork out;
    out.species = net.species;
    for (const auto& r : net.reactions) {
        if (r.reversible) {
            out.reactions.push_back(Reaction::make(r.reactant, r.product, false));
            out.reactions.push_back(Reaction::make(r.product, r.reactant, false));
        } else {
            out.reactions.push_back(r);
        }
    }
    return out;
}

bool all_reversible(const ReactionNetwork& net) {
    for (const auto& r : net.reactions)
        if (!r.reversible) return false;
    return true;
}

QMat dual_base_matrix(const ReactionNetwork& net) {
    // Fully reversible networks dualize through the plain transpose; anything
    // else is first written with irreversible pairs.
    if (all_reversible(net)) return net.stoichiometric_matrix();
    return to_irreversible(net).stoichiometric_matrix();
}

ReactionNetwork dual_network(const ReactionNetwork& net) {
    bool reversible = all_reversible(net);
    QMat dual = dual_base_matrix(net).transposed();
    ReactionNetwork out;
    for (size_t i = 0; i < dual.rows; ++i) out.species.push_back("S" + std::to_string(i + 1));
    for (size_t j = 0; j < dual.cols; ++j)
        out.reactions.push_back(Reaction::from_vector(dual.column(j), reversible));
    return out;
}

namespace {

void tarjan_scc(const std::vector<std::vector<size_t>>& adj, size_t& scc_count) {
    size_t n = adj.size();
    std::vector<long> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<size_t> stack;
    long next_index = 0;
    scc_count = 0;
    std::function<void(size_t)> strongconnect = [&](size_t v) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = 1;
        for (size_t w : adj[v]) {
            if (index[w] < 0) {
                strongconnect(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            ++scc_count;
            for (;;) {
                size_t w = stack.back();
                stack.pop_back();
                on_stack[w] = 0;
                if (w == v) break;
            }
        }
    };
    for (size_t v = 0; v < n; ++v)
        if (index[v] < 0) strongconnect(v);
}

}  // namespace

std::vector<std::pair<size_t, size_t>> InfluenceGraph::edges() const {
    std::vector<std::pair<size_t, size_t>> out;
    for (size_t i = 0; i < adj.size(); ++i)
        for (size_t j : adj[i]) out.emplace_back(i, j);
    return out;
}

InfluenceGraph influence_graph(const ReactionNetwork& net) {
    size_t m = net.reaction_count();
    InfluenceGraph g;
    g.nodes = m;
    g.adj.assign(m, {});
    std::vector<std::vector<char>> kin(m);
    std::vector<std::vector<char>> sup(m);
    size_t n = net.species_count();
    for (size_t i = 0; i < m; ++i) {
        kin[i].assign(n, 0);
        sup[i].assign(n, 0);
        for (size_t s : net.reactions[i].kinetic_support()) kin[i][s] = 1;
        for (size_t s = 0; s < n; ++s)
            if (net.reactions[i].gamma[s] != 0) sup[i][s] = 1;
    }
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            bool hit = false;
            for (size_t s = 0; s < n && !hit; ++s) hit = sup[i][s] && kin[j][s];
            if (hit) g.adj[i].push_back(j);
        }
    tarjan_scc(g.adj, g.scc_count);

    // Weak components over the undirected closure.
    std::vector<std::vector<size_t>> undirected(m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j : g.adj[i]) {
            undirected[i].push_back(j);
            undirected[j].push_back(i);
        }
    g.weak_component.assign(m, 0);
    std::vector<char> seen(m, 0);
    size_t comp = 0;
    for (size_t start = 0; start < m; ++start) {
        if (seen[start]) continue;
        std::vector<size_t> todo{start};
        seen[start] = 1;
        while (!todo.empty()) {
            size_t v = todo.back();
            todo.pop_back();
            g.weak_component[v] = comp;
            for (size_t w : undirected[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    todo.push_back(w);
                }
        }
        ++comp;
    }
    g.connected = comp <= 1;
    return g;
}

ReactionNetwork subnetwork(const ReactionNetwork& net, uint64_t mask) {
    ReactionNetwork out;
    out.species = net.species;
    for (size_t i = 0; i < net.reaction_count(); ++i)
        if (mask & (uint64_t{1} << i)) out.reactions.push_back(net.reactions[i]);
    return out;
}

std::vector<uint64_t> subnetwork_masks(const ReactionNetwork& net, size_t target_rank) {
    size_t m = net.reaction_count();
    if (m > 20) throw std::invalid_argument("too many reactions for subset enumeration");
    std::vector<uint64_t> masks;
    for (size_t size = m + 1; size-- > 0;) {
        std::vector<uint64_t> of_size;
        for (uint64_t mask = (uint64_t{1} << m); mask-- > 0;) {
            if (static_cast<size_t>(__builtin_popcountll(mask)) != size) continue;
            std::vector<QVec> cols;
            for (size_t i = 0; i < m; ++i)
                if (mask & (uint64_t{1} << i)) cols.push_back(net.reactions[i].gamma);
            QMat sub = QMat::from_columns(cols, net.species_count());
            if (rank(sub) == target_rank) of_size.push_back(mask);
        }
        masks.insert(masks.end(), of_size.begin(), of_size.end());
    }
    return masks;
}

std::vector<ReactionNetwork> enumerate_subnetworks(const ReactionNetwork& net,
                                                   size_t target_rank) {
    std::vector<ReactionNetwork> out;
    for (uint64_t mask : subnetwork_masks(net, target_rank)) out.push_back(subnetwork(net, mask));
    return out;
}

}  // namespace conekit
