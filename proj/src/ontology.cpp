#include "ofd/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ofd/error.hpp"

namespace ofd {

namespace {

std::string trim(std::string_view s) {
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

OntologyError malformed(const std::string& what) {
    return OntologyError(OntologyError::Code::malformed, "malformed ontology: " + what);
}

}  // namespace

Ontology Ontology::from_classes(std::vector<OntologyClass> classes, OntologyOptions options) {
    Ontology o;
    o.options_ = options;

    std::sort(classes.begin(), classes.end(),
              [](const OntologyClass& a, const OntologyClass& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& c = classes[i];
        if (c.id.implicit) throw malformed("class '" + c.id.name + "' is marked implicit");
        if (i > 0 && classes[i - 1].id == c.id)
            throw OntologyError(OntologyError::Code::duplicate_class, "duplicate class id '" + c.id.name + "'");
        o.id_index_.emplace(c.id.name, static_cast<ClassIndex>(i));
    }

    o.parents_.resize(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
        auto& c = classes[i];
        std::vector<std::string> cleaned;
        for (const auto& s : c.synonyms) {
            std::string t = trim(s);
            if (t.empty()) throw malformed("class '" + c.id.name + "' has a blank synonym");
            cleaned.push_back(std::move(t));
        }
        std::sort(cleaned.begin(), cleaned.end());
        cleaned.erase(std::unique(cleaned.begin(), cleaned.end()), cleaned.end());
        if (cleaned.empty())
            throw OntologyError(OntologyError::Code::empty_synonyms, "class '" + c.id.name + "' has no synonyms");
        c.synonyms = std::move(cleaned);

        auto& ps = o.parents_[i];
        for (const auto& p : c.parents) {
            if (p == c.id)
                throw OntologyError(OntologyError::Code::self_parent, "class '" + c.id.name + "' lists itself as parent");
            auto it = o.id_index_.find(p.name);
            if (p.implicit || it == o.id_index_.end())
                throw OntologyError(OntologyError::Code::unknown_parent,
                                    "class '" + c.id.name + "' references unknown parent '" + p.name + "'");
            ps.push_back(it->second);
        }
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    }

    // Iterative three-colour DFS over parent edges.
    enum : std::uint8_t { white, grey, black };
    std::vector<std::uint8_t> colour(classes.size(), white);
    for (ClassIndex root = 0; root < classes.size(); ++root) {
        if (colour[root] != white) continue;
        std::vector<std::pair<ClassIndex, std::size_t>> stack{{root, 0}};
        colour[root] = grey;
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            if (next < o.parents_[node].size()) {
                ClassIndex p = o.parents_[node][next++];
                if (colour[p] == grey)
                    throw OntologyError(OntologyError::Code::cycle,
                                        "is-a cycle through '" + classes[p].id.name + "'");
                if (colour[p] == white) {
                    colour[p] = grey;
                    stack.emplace_back(p, 0);
                }
            } else {
                colour[node] = black;
                stack.pop_back();
            }
        }
    }

    for (std::size_t i = 0; i < classes.size(); ++i) {
        for (const auto& s : classes[i].synonyms) {
            o.value_index_[o.normalize(s)].push_back(static_cast<ClassIndex>(i));
        }
    }
    for (auto& [value, senses] : o.value_index_) {
        std::sort(senses.begin(), senses.end());
        senses.erase(std::unique(senses.begin(), senses.end()), senses.end());
    }

    o.classes_ = std::move(classes);
    return o;
}

Ontology Ontology::parse_json(std::string_view document, OntologyOptions options) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw malformed(e.what());
    }
    if (!doc.is_object() || !doc.contains("classes") || !doc["classes"].is_array())
        throw malformed("expected an object with a \"classes\" array");

    std::vector<OntologyClass> classes;
    for (const auto& entry : doc["classes"]) {
        if (!entry.is_object()) throw malformed("class entry is not an object");
        if (!entry.contains("id") || !entry["id"].is_string()) throw malformed("class entry without string \"id\"");
        OntologyClass c;
        c.id = ClassId::declared(entry["id"].get<std::string>());
        if (!entry.contains("synonyms") || !entry["synonyms"].is_array())
            throw malformed("class '" + c.id.name + "' without \"synonyms\" array");
        for (const auto& s : entry["synonyms"]) {
            if (!s.is_string()) throw malformed("class '" + c.id.name + "' has a non-string synonym");
            c.synonyms.push_back(s.get<std::string>());
        }
        if (entry.contains("parents")) {
            if (!entry["parents"].is_array()) throw malformed("class '" + c.id.name + "' has non-array \"parents\"");
            for (const auto& p : entry["parents"]) {
                if (!p.is_string()) throw malformed("class '" + c.id.name + "' has a non-string parent");
                c.parents.push_back(ClassId::declared(p.get<std::string>()));
            }
        }
        classes.push_back(std::move(c));
    }
    return from_classes(std::move(classes), options);
}

Ontology Ontology::load_file(const std::filesystem::path& path, OntologyOptions options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw OntologyError(OntologyError::Code::malformed, "cannot open ontology file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str(), options);
}

std::span<const Ontology::ClassIndex> Ontology::parents_of(ClassIndex index) const {
    return parents_.at(index);
}

std::optional<Ontology::ClassIndex> Ontology::find(std::string_view id) const {
    auto it = id_index_.find(std::string(id));
    if (it == id_index_.end()) return std::nullopt;
    return it->second;
}

std::string Ontology::normalize(std::string_view value) const {
    std::string out(value);
    if (options_.case_insensitive) {
        for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::span<const Ontology::ClassIndex> Ontology::senses(std::string_view value) const {
    auto it = value_index_.find(normalize(value));
    if (it == value_index_.end()) return {};
    return it->second;
}

std::set<ClassId> Ontology::names(std::string_view value) const {
    std::set<ClassId> out;
    auto found = senses(value);
    if (found.empty()) {
        out.insert(ClassId::implicit_for(normalize(value)));
        return out;
    }
    for (ClassIndex i : found) out.insert(classes_[i].id);
    return out;
}

std::vector<std::pair<Ontology::ClassIndex, std::uint32_t>>
Ontology::ancestors_within(ClassIndex index, std::uint32_t theta) const {
    // BFS gives minimal edge counts on the DAG.
    std::vector<std::pair<ClassIndex, std::uint32_t>> out;
    std::unordered_map<ClassIndex, std::uint32_t> seen{{index, 0}};
    std::deque<ClassIndex> queue{index};
    while (!queue.empty()) {
        ClassIndex c = queue.front();
        queue.pop_front();
        std::uint32_t d = seen[c];
        out.emplace_back(c, d);
        if (d == theta) continue;
        for (ClassIndex p : parents_[c]) {
            if (seen.emplace(p, d + 1).second) queue.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

AncestorSet Ontology::ancestor_closure(const ClassId& id) const {
    AncestorSet result;
    if (id.implicit) {
        result.entries.emplace(id, 0);
        return result;
    }
    auto index = find(id.name);
    if (!index) throw OntologyError(OntologyError::Code::unknown_class, "unknown class id '" + id.name + "'");
    for (auto [c, d] : ancestors_within(*index, static_cast<std::uint32_t>(classes_.size())))
        result.entries.emplace(classes_[c].id, d);
    return result;
}

std::set<ClassId> Ontology::theta_ancestors(std::string_view value, std::uint32_t theta) const {
    std::set<ClassId> out;
    auto found = senses(value);
    if (found.empty()) {
        out.insert(ClassId::implicit_for(normalize(value)));
        return out;
    }
    for (ClassIndex s : found) {
        for (auto [c, d] : ancestors_within(s, theta)) out.insert(classes_[c].id);
    }
    return out;
}

}  // namespace ofd
