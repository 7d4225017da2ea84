#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cleave/errors.hpp"
#include "cleave/regime.hpp"

namespace cleave {

/// Fixed-width float formatting shared by every emitted asset: 12
/// significant digits, C locale, so regenerated files are byte-identical.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Minimal OBJ subset: v records, triangulated f records (extra per-corner
/// /vt/vn references are ignored), g/o records as face-group labels.
/// Polygonal faces are fan-triangulated.
inline FragmentSurface read_obj(std::istream& in) {
    FragmentSurface s;
    int current_group = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "#") continue;
        if (tag == "v") {
            Vec3 v;
            if (!(ls >> v.x >> v.y >> v.z)) throw io_error("bad vertex at line " + std::to_string(lineno));
            s.vertices.push_back(v);
        } else if (tag == "g" || tag == "o") {
            std::string name;
            ls >> name;
            if (name.empty()) name = "group" + std::to_string(s.group_names.size());
            current_group = int(s.group_names.size());
            s.group_names.push_back(name);
        } else if (tag == "f") {
            std::vector<int> idx;
            std::string tok;
            while (ls >> tok) {
                const auto slash = tok.find('/');
                if (slash != std::string::npos) tok = tok.substr(0, slash);
                int v = 0;
                try {
                    v = std::stoi(tok);
                } catch (const std::exception&) {
                    throw io_error("bad face index at line " + std::to_string(lineno));
                }
                if (v < 0) v = int(s.vertices.size()) + v + 1; // relative reference
                if (v < 1 || std::size_t(v) > s.vertices.size()) {
                    throw io_error("face index out of range at line " + std::to_string(lineno));
                }
                idx.push_back(v - 1);
            }
            if (idx.size() < 3) throw io_error("face with fewer than 3 vertices at line " + std::to_string(lineno));
            for (std::size_t i = 1; i + 1 < idx.size(); ++i) {
                s.faces.push_back({idx[0], idx[int(i)], idx[i + 1]});
                s.face_groups.push_back(current_group);
            }
        }
        // every other record type is outside the accepted subset; skip
    }
    if (current_group < 0) s.face_groups.clear();
    s.validate();
    return s;
}

inline FragmentSurface read_obj_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open mesh file: " + path);
    return read_obj(in);
}

inline void write_obj(std::ostream& out, const FragmentSurface& s) {
    for (const auto& v : s.vertices) {
        out << "v " << format_double(v.x) << ' ' << format_double(v.y) << ' ' << format_double(v.z)
            << '\n';
    }
    const bool grouped = s.face_groups.size() == s.faces.size() && !s.group_names.empty();
    int last_group = -2;
    for (std::size_t f = 0; f < s.faces.size(); ++f) {
        if (grouped && s.face_groups[f] != last_group) {
            last_group = s.face_groups[f];
            if (last_group >= 0) out << "g " << s.group_names[last_group] << '\n';
        }
        out << "f " << s.faces[f][0] + 1 << ' ' << s.faces[f][1] + 1 << ' ' << s.faces[f][2] + 1 << '\n';
    }
}

inline void write_obj_file(const std::string& path, const FragmentSurface& s) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write mesh file: " + path);
    write_obj(out, s);
    if (!out) throw io_error("failed writing mesh file: " + path);
}

} // namespace cleave
