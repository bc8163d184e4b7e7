#include "batchcode/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace batchcode {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
    std::string text;  // comment stripped, trimmed
};

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<Line> lines_of(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (const auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        raw = trim(raw);
        if (raw.empty()) continue;
        Line l{number, {}, raw};
        std::istringstream words(raw);
        for (std::string w; words >> w;) l.tokens.push_back(w);
        out.push_back(std::move(l));
    }
    return out;
}

long long to_int(const std::string& s, int line) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError(line, "expected an integer, got '" + s + "'");
    return v;
}

int to_positive(const std::string& s, int line, const char* what) {
    const long long v = to_int(s, line);
    if (v < 1 || v > 1000000) throw ParseError(line, std::string(what) + " must be a positive integer");
    return static_cast<int>(v);
}

class Cursor {
public:
    explicit Cursor(const std::string& text) : lines_(lines_of(text)) {}

    const Line& next(const char* what) {
        if (pos_ >= lines_.size())
            throw ParseError(lines_.empty() ? 1 : lines_.back().number + 1, std::string("missing ") + what);
        return lines_[pos_++];
    }
    bool done() const { return pos_ >= lines_.size(); }
    const Line* peek() const { return done() ? nullptr : &lines_[pos_]; }
    void expect_end() const {
        if (!done()) throw ParseError(lines_[pos_].number, "unexpected trailing content");
    }

private:
    std::vector<Line> lines_;
    std::size_t pos_ = 0;
};

void expect_tokens(const Line& l, std::size_t n, const char* what) {
    if (l.tokens.size() != n)
        throw ParseError(l.number, std::string("expected ") + std::to_string(n) + " fields for " + what + ", got " +
                                       std::to_string(l.tokens.size()));
}

std::vector<std::uint32_t> residues(const Line& l, int n, std::uint32_t q) {
    expect_tokens(l, static_cast<std::size_t>(n), "a vector");
    std::vector<std::uint32_t> out;
    for (const auto& t : l.tokens) {
        const long long v = to_int(t, l.number);
        if (v < 0 || v >= static_cast<long long>(q)) throw ParseError(l.number, "residue " + t + " outside [0, q)");
        out.push_back(static_cast<std::uint32_t>(v));
    }
    return out;
}

std::uint32_t modulus(const std::string& s, int line) {
    const long long q = to_int(s, line);
    if (q < 2 || q > PrimeField::kMaxModulus || !is_prime(static_cast<std::uint32_t>(q)))
        throw ParseError(line, "modulus " + s + " is not a supported prime");
    return static_cast<std::uint32_t>(q);
}

// "c1,c2,...": 1-based column list.
ColumnSet column_list(const std::string& s, int line) {
    ColumnSet out;
    std::string item;
    std::istringstream in(s);
    bool any = false;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ParseError(line, "empty column index");
        const long long c = to_int(item, line);
        if (c < 1 || c > static_cast<long long>(ColumnSet::kCapacity))
            throw ParseError(line, "column index " + item + " out of range");
        if (out.contains(static_cast<int>(c - 1))) throw ParseError(line, "repeated column " + item);
        out.insert(static_cast<int>(c - 1));
        any = true;
    }
    if (!any) throw ParseError(line, "empty column list");
    return out;
}

// "i: c1,c2" -> (request, columns), request 0-based.
std::pair<int, ColumnSet> tagged_set(const std::string& text, int line) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError(line, "expected 'i: c1,...'");
    const long long i = to_int(trim(text.substr(0, colon)), line);
    if (i < 1) throw ParseError(line, "request index must be positive");
    std::string rest;
    for (char ch : text.substr(colon + 1))
        if (ch != ' ' && ch != '\t') rest += ch;
    return {static_cast<int>(i - 1), column_list(rest, line)};
}

std::string columns_text(const ColumnSet& c) {
    std::string s;
    c.for_each([&](int x) {
        if (!s.empty()) s += ',';
        s += std::to_string(x + 1);
    });
    return s;
}

template <typename F>
auto wrap(int line, F&& f) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(line, e.what());
    }
}

}  // namespace

GFMatrix parse_matrix(const std::string& text) {
    Cursor cur(text);
    const auto& head = cur.next("header 'q k n'");
    expect_tokens(head, 3, "the header 'q k n'");
    const auto q = modulus(head.tokens[0], head.number);
    const int k = to_positive(head.tokens[1], head.number, "k");
    const int n = to_positive(head.tokens[2], head.number, "n");
    std::vector<std::vector<std::uint32_t>> rows;
    for (int r = 0; r < k; ++r) rows.push_back(residues(cur.next("matrix row"), n, q));
    cur.expect_end();
    return GFMatrix(q, rows);
}

std::string serialize_matrix(const GFMatrix& g) {
    std::ostringstream out;
    out << g.modulus() << ' ' << g.rows() << ' ' << g.cols() << '\n';
    for (int r = 0; r < g.rows(); ++r) {
        for (int c = 0; c < g.cols(); ++c) out << (c ? " " : "") << g(r, c);
        out << '\n';
    }
    return out.str();
}

ServiceCollection parse_services(const std::string& text, int k) {
    std::vector<Service> out;
    for (const auto& l : lines_of(text)) {
        auto [i, cols] = tagged_set(l.text, l.number);
        if (i >= k) throw ParseError(l.number, "request " + std::to_string(i + 1) + " exceeds k = " + std::to_string(k));
        out.push_back({i, cols});
    }
    return ServiceCollection(k, std::move(out));
}

std::string serialize_services(const ServiceCollection& s) {
    std::string out;
    for (const auto& sv : s.services()) out += std::to_string(sv.request + 1) + ": " + columns_text(sv.columns) + "\n";
    return out;
}

SubspaceFamily parse_family(const std::string& text) {
    Cursor cur(text);
    const auto& head = cur.next("header 'q n m'");
    expect_tokens(head, 3, "the header 'q n m'");
    const auto q = modulus(head.tokens[0], head.number);
    const int n = to_positive(head.tokens[1], head.number, "n");
    const int m = to_positive(head.tokens[2], head.number, "m");
    std::vector<Subspace> members;
    for (int j = 0; j < m; ++j) {
        const auto& dl = cur.next("'dim d' line");
        if (dl.tokens.size() != 2 || dl.tokens[0] != "dim") throw ParseError(dl.number, "expected 'dim d'");
        const int d = to_positive(dl.tokens[1], dl.number, "dimension");
        std::vector<GFVector> basis;
        for (int r = 0; r < d; ++r) basis.emplace_back(q, residues(cur.next("basis vector"), n, q));
        members.push_back(wrap(dl.number, [&] { return Subspace(q, n, std::move(basis)); }));
    }
    cur.expect_end();
    return SubspaceFamily(q, n, std::move(members));
}

std::string serialize_family(const SubspaceFamily& f) {
    std::ostringstream out;
    out << f.modulus() << ' ' << f.ambient() << ' ' << f.size() << '\n';
    for (const auto& u : f.members()) {
        out << "dim " << u.dim() << '\n';
        for (const auto& b : u.basis()) {
            for (std::size_t j = 0; j < b.size(); ++j) out << (j ? " " : "") << b[j];
            out << '\n';
        }
    }
    return out.str();
}

BipartiteGraph parse_graph(const std::string& text) {
    Cursor cur(text);
    const auto& head = cur.next("header 'k b e'");
    expect_tokens(head, 3, "the header 'k b e'");
    const int k = to_positive(head.tokens[0], head.number, "k");
    const long long b = to_int(head.tokens[1], head.number);
    const long long e = to_int(head.tokens[2], head.number);
    if (b < 0 || e < 0) throw ParseError(head.number, "counts must be non-negative");
    std::vector<std::pair<int, int>> edges;
    for (long long j = 0; j < e; ++j) {
        const auto& l = cur.next("edge line");
        expect_tokens(l, 2, "an edge");
        const long long i = to_int(l.tokens[0], l.number), bl = to_int(l.tokens[1], l.number);
        if (i < 1 || i > k || bl < 1 || bl > b) throw ParseError(l.number, "edge endpoint out of range");
        edges.emplace_back(static_cast<int>(i - 1), static_cast<int>(bl - 1));
    }
    cur.expect_end();
    return wrap(head.number, [&] { return BipartiteGraph(k, static_cast<int>(b), std::move(edges)); });
}

std::string serialize_graph(const BipartiteGraph& g) {
    std::ostringstream out;
    out << g.points() << ' ' << g.blocks() << ' ' << g.edges().size() << '\n';
    for (const auto& [i, j] : g.edges()) out << i + 1 << ' ' << j + 1 << '\n';
    return out.str();
}

std::vector<Event> parse_events(const std::string& text) {
    std::vector<Event> out;
    for (const auto& l : lines_of(text)) {
        if (l.tokens[0] == "arrive") {
            expect_tokens(l, 2, "'arrive i'");
            const long long i = to_int(l.tokens[1], l.number);
            if (i < 1) throw ParseError(l.number, "request index must be positive");
            out.push_back({Event::Kind::Arrive, static_cast<int>(i - 1), {}});
        } else if (l.tokens[0] == "complete") {
            auto [i, cols] = tagged_set(trim(l.text.substr(8)), l.number);
            out.push_back({Event::Kind::Complete, i, cols});
        } else {
            throw ParseError(l.number, "expected 'arrive' or 'complete'");
        }
    }
    return out;
}

std::string serialize_events(const std::vector<Event>& events) {
    std::string out;
    for (const auto& e : events) {
        if (e.kind == Event::Kind::Arrive)
            out += "arrive " + std::to_string(e.request + 1) + "\n";
        else
            out += "complete " + std::to_string(e.request + 1) + ":" + columns_text(e.columns) + "\n";
    }
    return out;
}

HistoryCollection parse_history_collection(const std::string& text) {
    Cursor cur(text);
    const auto& ml = cur.next("'mode' line");
    if (ml.tokens.size() != 2 || ml.tokens[0] != "mode" || (ml.tokens[1] != "sequence" && ml.tokens[1] != "set"))
        throw ParseError(ml.number, "expected 'mode sequence' or 'mode set'");
    const auto& hl = cur.next("'horizon' line");
    if (hl.tokens.size() != 2 || hl.tokens[0] != "horizon") throw ParseError(hl.number, "expected 'horizon t'");
    const int t = to_positive(hl.tokens[1], hl.number, "horizon");
    HistoryCollection out = wrap(hl.number, [&] {
        return HistoryCollection(ml.tokens[1] == "set" ? HistoryMode::Set : HistoryMode::Sequence, t);
    });
    while (!cur.done()) {
        const auto& head = cur.next("'member'");
        if (head.text != "member") throw ParseError(head.number, "expected 'member'");
        History h;
        while (cur.peek() && cur.peek()->text != "member") {
            const auto& l = cur.next("set");
            h.push_back(tagged_set(l.text, l.number).second);
        }
        wrap(head.number, [&] {
            out.insert(std::move(h));
            return 0;
        });
    }
    return out;
}

std::string serialize_history_collection(const HistoryCollection& h, const RecoveryTable& table) {
    std::string out = std::string("mode ") + (h.mode() == HistoryMode::Set ? "set" : "sequence") + "\n";
    out += "horizon " + std::to_string(h.horizon()) + "\n";
    for (const auto& m : h.sorted_members()) {
        out += "member\n";
        for (const auto& s : m) {
            int tag = -1;
            for (int i = 0; i < table.k() && tag < 0; ++i)
                if (table.is_minimal_for(i, s)) tag = i;
            if (tag < 0) throw std::invalid_argument("history set " + s.to_string() + " is not a minimal recovery set");
            out += std::to_string(tag + 1) + ": " + columns_text(s) + "\n";
        }
    }
    return out;
}

std::vector<int> parse_request_list(const std::string& text) {
    std::vector<int> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        const long long v = to_int(item, 1);
        if (v < 1) throw ParseError(1, "request index must be positive");
        out.push_back(static_cast<int>(v - 1));
    }
    if (out.empty()) throw ParseError(1, "empty request list");
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_report(const Report& r) {
    std::ostringstream out;
    out << "property: " << r.property << '\n';
    if (!r.params.empty()) {
        out << "parameters:";
        for (const auto& [k, v] : r.params) out << ' ' << k << '=' << v;
        out << '\n';
    }
    out << "verdict: " << r.verdict << '\n';
    for (const auto& d : r.details) out << "  " << d << '\n';
    out << "---\n";
    out << "property=" << r.property << '\n';
    for (const auto& [k, v] : r.params) out << k << '=' << v << '\n';
    out << "verdict=" << r.verdict << '\n';
    for (const auto& [k, v] : r.keys) out << k << '=' << v << '\n';
    for (const auto& [k, v] : r.digests) out << "digest." << k << "=fnv1a64:" << v << '\n';
    out << "wall_ms=" << std::fixed << std::setprecision(3) << r.seconds * 1000.0 << '\n';
    return out.str();
}

}  // namespace batchcode
