#pragma once

#include <json.hpp>
#include <string>

#include "nonrev/edge_field.hpp"
#include "nonrev/fokker_planck.hpp"

namespace nonrev {

using Json = nlohmann::ordered_json;

// Chain format: {"states": ["a","b",...], "rates": [[x,y,value],...]} with
// zero-based state indices; omitted pairs carry rate zero.
ChainSpec chain_from_json(const Json& j);
Json chain_to_json(const ChainSpec& spec);
ChainSpec load_chain(const std::string& path);

// Edge field format: {"edges": [[x,y,value],...]} storing only the x < y
// representative of each edge. Entries must lie on the given support;
// missing edges are zero.
EdgeField edge_field_from_json(const Json& j, const EdgeSet& support);
Json edge_field_to_json(const EdgeField& field);

// Density format: {"values": [...]} (or a bare array).
Density density_from_json(const Json& j);
Json density_to_json(const Density& rho);

// Grid format: {"n_cells": n, "drift": [per-face], "diffusion": [per-face]}.
GridModel grid_from_json(const Json& j);
Json grid_to_json(const GridModel& model);
GridModel load_grid(const std::string& path);

Json load_json_file(const std::string& path);

// Serializer used for every report: floating-point values are written with
// 17 significant digits.
std::string dump_json(const Json& j, bool pretty = false);

}  // namespace nonrev
