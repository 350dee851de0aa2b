// Copyright 2026 The bettiforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bettiforge/graph_io.h"

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bettiforge {

namespace {

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) {
        out.push_back(item);
    }
    return out;
}

long long parse_int(const std::string &s) {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) {
        throw std::invalid_argument("not an integer: " + s);
    }
    return v;
}

double parse_real(const std::string &s) {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) {
        throw std::invalid_argument("not a number: " + s);
    }
    return v;
}

int parse_count(const std::string &s) {
    long long v = parse_int(s);
    if (v < 0 || v > kMaxVertices) {
        throw std::invalid_argument("count out of range: " + s);
    }
    return (int)v;
}

}  // namespace

std::string graph_to_json(const Graph &g) {
    nlohmann::json j;
    j["n"] = g.n();
    nlohmann::json edges = nlohmann::json::array();
    for (const auto &e : g.edges()) {
        edges.push_back({e.first, e.second});
    }
    j["edges"] = edges;
    return j.dump() + "\n";
}

Graph graph_from_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed graph JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
        throw std::invalid_argument("graph JSON needs an integer field \"n\"");
    }
    long long n = j["n"].get<long long>();
    if (n < 0 || n > kMaxVertices) {
        throw std::invalid_argument("vertex count out of range");
    }
    std::vector<std::pair<int, int>> edges;
    if (!j.contains("edges") || !j["edges"].is_array()) {
        throw std::invalid_argument("\"edges\" must be an array");
    }
    for (const auto &e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
            throw std::invalid_argument("each edge must be a pair of integers");
        }
        long long a = e[0].get<long long>();
        long long b = e[1].get<long long>();
        if (a < 0 || b < 0 || a >= n || b >= n) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        edges.emplace_back((int)a, (int)b);
    }
    return Graph((int)n, edges);
}

Graph read_graph_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot read graph file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return graph_from_json(buf.str());
}

void write_graph_file(const Graph &g, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << graph_to_json(g);
}

Graph graph_from_spec(const std::string &spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("generator spec must look like family:params, got " + spec);
    }
    std::string family = spec.substr(0, colon);
    std::vector<std::string> args = split(spec.substr(colon + 1), ',');
    try {
        if (family == "kpartite" && args.size() == 2) {
            return gen_kpartite(parse_count(args[0]), parse_count(args[1]));
        }
        if (family == "er" && (args.size() == 2 || args.size() == 3)) {
            uint64_t seed = args.size() == 3 ? (uint64_t)parse_int(args[2]) : 0;
            return gen_erdos_renyi(parse_count(args[0]), parse_real(args[1]), seed);
        }
        if (family == "rips" && (args.size() == 2 || args.size() == 3)) {
            double thr = args.size() == 3 ? parse_real(args[2]) : 1.0;
            return rips_graph(gen_rips_points(parse_count(args[0]), parse_count(args[1])), thr);
        }
        if (family == "complete" && args.size() == 1) {
            return gen_complete(parse_count(args[0]));
        }
    } catch (const std::out_of_range &) {
        throw std::invalid_argument("generator parameter out of range in " + spec);
    }
    throw std::invalid_argument("unknown generator spec " + spec +
                                " (expected kpartite:m,k, er:n,p[,seed], rips:n,k[,threshold] or complete:n)");
}

}  // namespace bettiforge
