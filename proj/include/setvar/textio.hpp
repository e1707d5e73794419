#pragma once

#include "setvar/varcones.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace setvar {

struct ScenarioSpec {
    std::string name;
    int n = 0;
    Rat horizon = 1;
    int steps = 1;
    std::string const_map;                  // dynamics const <map>
    std::map<int, std::string> step_maps;   // dynamics at k <map>
};

/// Contents of a `.vi` file: any mix of map, objective, scenario,
/// reference and path blocks.
struct Document {
    std::map<std::string, SetMap> maps;
    std::vector<std::pair<std::string, MinMaxAffine>> objectives;
    std::optional<ScenarioSpec> scenario;
    std::optional<PolyUnion> reference;
    std::vector<std::vector<Vec>> paths;

    void merge(const Document& other);
    const SetMap& map_named(const std::string& name) const;
    /// The only map in the document (error when there is not exactly one).
    const SetMap& single_map() const;
};

Document parse_document(std::string_view text, const std::string& origin = "<input>");
Document load_document(const std::string& path);

std::string format_map(const std::string& name, const SetMap& s);
std::string format_objective(const std::string& name, const MinMaxAffine& f);
std::string format_path(const std::vector<Vec>& states);

}  // namespace setvar
