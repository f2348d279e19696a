#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "qmut/classifier.hpp"
#include "qmut/consequences.hpp"
#include "qmut/enumerator.hpp"
#include "qmut/normalizer.hpp"
#include "qmut/quiver.hpp"

namespace qmut {

// Malformed document. `location` names the line/column or JSON field at fault.
class LoadError : public std::runtime_error {
public:
    LoadError(std::string location, const std::string& what)
        : std::runtime_error(location + ": " + what), location_(std::move(location)) {}
    const std::string& location() const { return location_; }

private:
    std::string location_;
};

// "full" lists every arrow; "half" lists one record per skew pair and the loader adds
// the partners.
enum class DocumentMode { Full, Half };

// Deterministic JSON document: arrows sorted by (from, to, color), one per line.
std::string save_quiver(const ColoredQuiver& q, DocumentMode mode = DocumentMode::Full);

// Parses and validates. Throws LoadError for malformed documents and InvariantError
// (with every violating (i, j, c)) for documents describing an invalid quiver.
ColoredQuiver load_quiver(std::string_view bytes);
// Parses without the final validation.
ColoredQuiver load_quiver_unchecked(std::string_view bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// Graphviz rendering. Simple pairs are drawn once from the smaller endpoint, double
// pairs with both arrows; labels are colors. Central vertices and arrows are
// highlighted when a certificate is given.
std::string export_dot(const ColoredQuiver& q, const ClassCertificate* cert = nullptr);

// Class archives: one JSON line per member ({"digest", "arrows"}) in digest order, then
// a summary line ({"summary": {...}}).
void write_class_archive(std::ostream& out, const MutationClass& cls);

struct ClassArchive {
    int m = 1;
    int n = 0;
    std::string seed_digest;
    bool exhausted = false;
    std::map<std::string, std::vector<Arrow>> members;
};

// Throws LoadError on malformed lines or when a stored digest does not match its arrows.
ClassArchive read_class_archive(std::istream& in);

nlohmann::ordered_json to_json(const std::vector<Arrow>& arrows);
nlohmann::ordered_json to_json(const std::vector<Violation>& violations);
nlohmann::ordered_json to_json(const CentralCycle& cycle);
nlohmann::ordered_json to_json(const ClassCertificate& cert);
nlohmann::ordered_json to_json(const ClassVerdict& verdict);
nlohmann::ordered_json to_json(const Verdict& verdict);
nlohmann::ordered_json to_json(const NormalizationTrace& trace);
nlohmann::ordered_json to_json(const TheoremReport& report);
nlohmann::ordered_json to_json(const ClassStatistics& stats);
nlohmann::ordered_json to_json(const BastianParameters& params);
nlohmann::ordered_json to_json(const ZeroPartReport& report);

// Inverse of to_json(NormalizationTrace); throws LoadError.
NormalizationTrace trace_from_json(std::string_view bytes);

}  // namespace qmut
