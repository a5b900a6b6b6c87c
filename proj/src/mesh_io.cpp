// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fracmix/error.hpp"
#include "fracmix/geometry.hpp"

namespace fracmix {

void write_mesh(std::ostream& os, const Mesh& mesh) {
  const auto& d = mesh.domain();
  os << std::setprecision(17);
  os << d.dim << ' ' << mesh.h() << ' ' << d.r << ' ' << d.R << '\n';
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
    const Point& p = mesh.vertex(i);
    os << i << ' ' << p[0];
    if (d.dim == 2) os << ' ' << p[1];
    os << ' ' << to_string(mesh.node_class(i)) << '\n';
  }
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& cell = mesh.cell(c);
    os << c << ' ' << cell[0] << ' ' << cell[1];
    if (d.dim == 2) os << ' ' << cell[2];
    os << '\n';
  }
}

Mesh read_mesh(std::istream& is) {
  std::string line;
  DomainSpec domain;
  double h = 0.0;
  bool have_header = false;
  std::vector<Point> verts;
  std::vector<NodeClass> classes;
  std::vector<std::array<int, 3>> cells;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw ValidationError("mesh line " + std::to_string(lineno) + ": " + why);
    };
    try {
      if (!have_header) {
        if (tok.size() != 4) fail("header must be `n h r R`");
        domain.dim = std::stoi(tok[0]);
        h = std::stod(tok[1]);
        domain.r = std::stod(tok[2]);
        domain.R = std::stod(tok[3]);
        have_header = true;
        continue;
      }
      const bool is_vertex = !tok.back().empty() && std::isalpha(static_cast<unsigned char>(tok.back()[0]));
      if (is_vertex) {
        if (tok.size() != static_cast<std::size_t>(domain.dim + 2)) fail("bad vertex line");
        if (std::stoul(tok[0]) != verts.size()) fail("vertex ids must be consecutive from 0");
        Point p{std::stod(tok[1]), domain.dim == 2 ? std::stod(tok[2]) : 0.0};
        verts.push_back(p);
        classes.push_back(node_class_from_string(tok.back()));
      } else {
        if (tok.size() != static_cast<std::size_t>(domain.dim + 2)) fail("bad cell line");
        if (std::stoul(tok[0]) != cells.size()) fail("cell ids must be consecutive from 0");
        std::array<int, 3> c{std::stoi(tok[1]), std::stoi(tok[2]), domain.dim == 2 ? std::stoi(tok[3]) : -1};
        cells.push_back(c);
      }
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const ValidationError*>(&e)) throw;
      fail(std::string("unparsable number (") + e.what() + ")");
    }
  }
  require(have_header, "mesh: missing header");
  (void)h;
  return Mesh(domain, std::move(verts), std::move(cells), std::move(classes));
}

}  // namespace fracmix
