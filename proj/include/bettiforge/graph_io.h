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

#ifndef BETTIFORGE_GRAPH_IO_H
#define BETTIFORGE_GRAPH_IO_H

#include <string>

#include "bettiforge/graph.h"

namespace bettiforge {

// Canonical form: {"edges":[[i,j],...],"n":N} with sorted keys and edges,
// no whitespace, trailing newline.
std::string graph_to_json(const Graph &g);
Graph graph_from_json(const std::string &text);
Graph read_graph_file(const std::string &path);
void write_graph_file(const Graph &g, const std::string &path);

// Generator specs: kpartite:m,k  er:n,p[,seed]  rips:n,k[,threshold]  complete:n
Graph graph_from_spec(const std::string &spec);

}  // namespace bettiforge

#endif
