#include "adhesia/dot.hpp"

#include <set>
#include <sstream>

namespace adhesia {

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string node_id(const AtomId& n) { return quote("n:" + n); }
std::string edge_id(const AtomId& e) { return quote("e:" + e); }

/// The set that clusters a node: its contents, or the first projection of a
/// Copy tuple. Null for atomic nodes.
const Term* contents_of(const Term& t) {
    if (t.is_set()) return &t;
    if (t.is_seq() && t.size() > 0 && t.children()[0].is_set()) return &t.children()[0];
    return nullptr;
}

class DotWriter {
public:
    explicit DotWriter(const CoalgGraph& G) : G_(G) {}

    std::string run() {
        // Roots are carrier elements that no container mentions.
        std::set<AtomId> mentioned;
        for (const auto& n : G_.N) {
            if (const Term* c = contents_of(G_.node_of(n))) {
                for (const auto& a : atoms_of(*c)) mentioned.insert(a);
            }
        }
        for (const auto& n : G_.N)
            if (!mentioned.contains(n)) place_node(n, 1);
        for (const auto& n : G_.N)
            if (!placed_.contains("n:" + n)) place_node(n, 1);
        for (const auto& e : G_.E)
            if (!placed_.contains("e:" + e)) place_edge(e, 1);
        for (const auto& e : G_.E) incidences(e);

        std::ostringstream out;
        out << "digraph adhesia {\n" << body_.str() << arcs_.str() << "}\n";
        return out.str();
    }

private:
    const CoalgGraph& G_;
    std::set<std::string> placed_;
    std::ostringstream body_;
    std::ostringstream arcs_;
    unsigned clusters_ = 0;

    static std::string indent(int level) { return std::string(2 * level, ' '); }

    void place_edge(const AtomId& e, int level) {
        placed_.insert("e:" + e);
        body_ << indent(level) << edge_id(e) << " [shape=box, label=" << quote(e) << "];\n";
    }

    void place_node(const AtomId& n, int level) {
        placed_.insert("n:" + n);
        const Term* c = contents_of(G_.node_of(n));
        if (!c) {
            body_ << indent(level) << node_id(n) << " [label=" << quote(n) << "];\n";
            return;
        }
        body_ << indent(level) << "subgraph cluster_" << clusters_++ << " {\n";
        body_ << indent(level + 1) << "label=" << quote(n) << ";\n";
        body_ << indent(level + 1) << node_id(n) << " [shape=plaintext, label=" << quote(n) << "];\n";
        place_members(*c, node_id(n), level + 1);
        body_ << indent(level) << "}\n";
    }

    /// Members of a contents set; `owner` receives dashed arcs to members
    /// already drawn elsewhere.
    void place_members(const Term& set, const std::string& owner, int level) {
        for (const Term& m : set.children()) {
            if (m.is_atom()) {
                const AtomId& x = m.name();
                const bool is_node = G_.N.contains(x);
                const std::string key = (is_node ? "n:" : "e:") + x;
                if (placed_.contains(key)) {
                    arcs_ << "  " << owner << " -> " << (is_node ? node_id(x) : edge_id(x))
                          << " [style=dashed];\n";
                } else if (is_node) {
                    place_node(x, level);
                } else if (G_.E.contains(x)) {
                    place_edge(x, level);
                }
            } else if (m.is_set()) {
                const unsigned id = clusters_++;
                const std::string anchor = quote("set:" + std::to_string(id));
                body_ << indent(level) << "subgraph cluster_" << id << " {\n";
                body_ << indent(level + 1) << "label=\"\";\n";
                body_ << indent(level + 1) << anchor << " [shape=point];\n";
                place_members(m, anchor, level + 1);
                body_ << indent(level) << "}\n";
            }
        }
    }

    std::string target(const AtomId& x) const { return G_.N.contains(x) ? node_id(x) : edge_id(x); }

    void incidences(const AtomId& e) {
        const Term& t = G_.st_of(e);
        if (t.is_pair()) {
            for (const auto& a : atoms_of(t.first())) arcs_ << "  " << target(a) << " -> " << edge_id(e) << ";\n";
            for (const auto& a : atoms_of(t.second())) arcs_ << "  " << edge_id(e) << " -> " << target(a) << ";\n";
            return;
        }
        for (const auto& a : atoms_of(t)) arcs_ << "  " << edge_id(e) << " -> " << target(a) << " [dir=none];\n";
    }
};

}  // namespace

std::string export_dot(const CoalgGraph& G) { return DotWriter(G).run(); }

}  // namespace adhesia
