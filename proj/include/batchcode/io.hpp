#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "batchcode/aad.hpp"
#include "batchcode/graph.hpp"
#include "batchcode/history.hpp"
#include "batchcode/simulate.hpp"
#include "batchcode/strong.hpp"

namespace batchcode {

// Malformed input; the message carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// All formats are line oriented; '#' starts a comment and blank lines are
// skipped. Indices in the text are 1-based.

// "q k n", then k rows of n residues.
GFMatrix parse_matrix(const std::string& text);
std::string serialize_matrix(const GFMatrix& g);

// One service per line: "i: c1,c2,...,cm".
ServiceCollection parse_services(const std::string& text, int k);
std::string serialize_services(const ServiceCollection& s);

// "q n m", then per member "dim d" and d basis vectors of n residues.
SubspaceFamily parse_family(const std::string& text);
std::string serialize_family(const SubspaceFamily& f);

// "k b e", then e lines "i j" (point i, block j).
BipartiteGraph parse_graph(const std::string& text);
std::string serialize_graph(const BipartiteGraph& g);

// "arrive i" and "complete i:c1,...,cm".
std::vector<Event> parse_events(const std::string& text);
std::string serialize_events(const std::vector<Event>& events);

// "mode sequence|set", "horizon t", then per member a line "member" followed
// by its sets in recovery-collection form. The request tag on each set line
// is informational; the writer uses the first request the set is minimal for.
HistoryCollection parse_history_collection(const std::string& text);
std::string serialize_history_collection(const HistoryCollection& h, const RecoveryTable& table);

// "1,2,1" -> {0,1,0}.
std::vector<int> parse_request_list(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// 64-bit FNV-1a, hex encoded.
std::string fnv1a_digest(const std::string& bytes);

struct Report {
    std::string property;
    std::vector<std::pair<std::string, std::string>> params;
    std::string verdict;
    std::vector<std::string> details;                       // human-readable lines
    std::vector<std::pair<std::string, std::string>> keys;  // extra machine keys
    std::vector<std::pair<std::string, std::string>> digests;
    double seconds = 0;
};

// Human-readable block, then a "---" line and key=value pairs.
std::string format_report(const Report& r);

}  // namespace batchcode
