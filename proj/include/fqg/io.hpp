#ifndef FQG_IO_HPP
#define FQG_IO_HPP

#include "fqg/action.hpp"
#include "fqg/wha.hpp"

#include <string>
#include <utility>

namespace fqg {

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error("ParseError: " + msg) {}
};

// Groupoid file: {"units": [...], "source": [...], "target": [...],
// "inverse": [...], "mul": [[x, y, xy], ...]} with an optional "elements"
// name list. Match pair file: {"h": [...], "k": [...]}. Action file:
// {"groupoid": path, "blocks": [[n_1, ...], ...], "maps": [matrix, ...]}
// with complex entries as [re, im] pairs; the groupoid path is resolved
// relative to the action file.
Groupoid load_groupoid(const std::string& path);
void save_groupoid(const Groupoid& g, const std::string& path);

std::pair<std::vector<int>, std::vector<int>> load_matchpair_ids(const std::string& path);
void save_matchpair_ids(const std::vector<int>& h, const std::vector<int>& k,
                        const std::string& path);

GroupoidAction load_action(const std::string& path);
void save_action(const GroupoidAction& act, const std::string& action_path,
                 const std::string& groupoid_path);

std::string weakhopf_to_json(const WeakHopf& w);

std::string report_to_json(const Report& rep, double tol);
std::string report_to_text(const Report& rep, double tol);

}  // namespace fqg

#endif
