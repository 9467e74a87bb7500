#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "osm/io.hpp"

namespace osm::io {

std::string Diagnostic::to_string() const {
  std::string out = source;
  if (line > 0) out += ":" + std::to_string(line) + ":" + std::to_string(column);
  return out + ": " + message;
}

namespace {

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += "\n";
    out += d.to_string();
  }
  return out;
}

// Walks the YAML tree, remembering where every path came from so validation
// failures can point back into the file.
class InstanceReader {
 public:
  explicit InstanceReader(std::string source) : source_(std::move(source)) {}

  SchoolChoiceProblem read(const YAML::Node& root) {
    SchoolChoiceProblem problem;
    if (!root.IsMap()) fail(root, "instance document must be a mapping");
    mark("", root);
    for (const auto& entry : root) {
      const auto key = entry.first.as<std::string>();
      if (key != "students" && key != "schools") {
        fail(entry.first, "unknown key '" + key + "'");
      }
    }
    const YAML::Node students = require(root, "students", "");
    const YAML::Node schools = require(root, "schools", "");
    expect_sequence(students, "students");
    expect_sequence(schools, "schools");
    mark("/students", students);
    mark("/schools", schools);

    for (std::size_t i = 0; i < students.size(); ++i) {
      const auto path = "/students/" + std::to_string(i);
      const YAML::Node node = students[i];
      expect_keys(node, path, {"id", "preferences"});
      Student student;
      student.id.value = scalar(require(node, "id", path), path + "/id");
      if (node["preferences"]) {
        student.preferences.tiers = tiers<SchoolId>(node["preferences"], path + "/preferences");
      }
      problem.students.push_back(std::move(student));
    }
    for (std::size_t s = 0; s < schools.size(); ++s) {
      const auto path = "/schools/" + std::to_string(s);
      const YAML::Node node = schools[s];
      expect_keys(node, path, {"id", "capacity", "priorities"});
      School school;
      school.id.value = scalar(require(node, "id", path), path + "/id");
      const YAML::Node capacity = require(node, "capacity", path);
      mark(path + "/capacity", capacity);
      try {
        school.capacity = capacity.as<int>();
      } catch (const YAML::Exception&) {
        fail(capacity, "capacity must be an integer");
      }
      if (node["priorities"]) {
        school.priorities.tiers = tiers<StudentId>(node["priorities"], path + "/priorities");
      }
      problem.schools.push_back(std::move(school));
    }
    return problem;
  }

  Diagnostic locate(const std::string& path, const std::string& message) const {
    // Fall back to the nearest enclosing node that was recorded.
    std::string probe = path;
    while (true) {
      const auto it = marks_.find(probe);
      if (it != marks_.end()) {
        return {source_, it->second.line + 1, it->second.column + 1, message};
      }
      if (probe.empty()) break;
      probe.erase(probe.rfind('/'));
    }
    return {source_, 0, 0, message};
  }

  [[noreturn]] void fail(const YAML::Node& node, const std::string& message) const {
    const auto m = node.Mark();
    throw ParseError({{source_, m.line + 1, m.column + 1, message}});
  }

 private:
  void mark(const std::string& path, const YAML::Node& node) { marks_[path] = node.Mark(); }

  YAML::Node require(const YAML::Node& node, const std::string& key, const std::string& path) const {
    const YAML::Node child = node[key];
    if (!child) fail(node, "missing key '" + key + "'" + (path.empty() ? "" : " in " + path));
    return child;
  }

  void expect_sequence(const YAML::Node& node, const std::string& what) const {
    if (!node.IsSequence()) fail(node, "'" + what + "' must be a list");
  }

  void expect_keys(const YAML::Node& node, const std::string& path,
                   std::initializer_list<const char*> allowed) {
    if (!node.IsMap()) fail(node, path + " must be a mapping");
    mark(path, node);
    for (const auto& entry : node) {
      const auto key = entry.first.as<std::string>();
      if (std::find_if(allowed.begin(), allowed.end(),
                       [&](const char* k) { return key == k; }) == allowed.end()) {
        fail(entry.first, "unknown key '" + key + "' in " + path);
      }
    }
  }

  std::string scalar(const YAML::Node& node, const std::string& path) {
    if (!node.IsScalar()) fail(node, path + " must be a string");
    mark(path, node);
    return node.Scalar();
  }

  template <class Id>
  std::vector<std::vector<Id>> tiers(const YAML::Node& node, const std::string& path) {
    expect_sequence(node, path);
    mark(path, node);
    std::vector<std::vector<Id>> out;
    for (std::size_t t = 0; t < node.size(); ++t) {
      const auto tier_path = path + "/" + std::to_string(t);
      const YAML::Node tier = node[t];
      mark(tier_path, tier);
      std::vector<Id> ids;
      if (tier.IsScalar()) {
        ids.push_back(Id{scalar(tier, tier_path + "/0")});
      } else if (tier.IsSequence()) {
        for (std::size_t k = 0; k < tier.size(); ++k) {
          ids.push_back(Id{scalar(tier[k], tier_path + "/" + std::to_string(k))});
        }
      } else {
        fail(tier, tier_path + " must be an id or a list of ids");
      }
      out.push_back(std::move(ids));
    }
    return out;
  }

  std::string source_;
  std::map<std::string, YAML::Mark> marks_;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError({{path.string(), 0, 0, "cannot open file"}});
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
  }
  return cells;
}

std::string lower(std::string text) {
  for (auto& c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return text;
}

}  // namespace

ParseError::ParseError(std::vector<Diagnostic> diagnostics)
    : ValidationError(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

SchoolChoiceProblem parse_instance(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError({{source, e.mark.line + 1, e.mark.column + 1, e.msg}});
  }
  InstanceReader reader(source);
  SchoolChoiceProblem problem = reader.read(root);
  const ValidationResult result = validate_problem(problem);
  if (!result.ok()) {
    std::vector<Diagnostic> diagnostics;
    for (const auto& v : result.violations) diagnostics.push_back(reader.locate(v.path, v.message));
    throw ParseError(std::move(diagnostics));
  }
  return problem;
}

SchoolChoiceProblem load_instance(const std::filesystem::path& path) {
  return parse_instance(read_file(path), path.string());
}

Json instance_json(const SchoolChoiceProblem& problem) {
  auto tier_list = [](const auto& tiers) {
    Json out = Json::array();
    for (const auto& tier : tiers) {
      Json ids = Json::array();
      for (const auto& id : tier) ids.push_back(id.value);
      out.push_back(std::move(ids));
    }
    return out;
  };
  Json students = Json::array();
  for (const auto& student : problem.students) {
    Json s;
    s["id"] = student.id.value;
    s["preferences"] = tier_list(student.preferences.tiers);
    students.push_back(std::move(s));
  }
  Json schools = Json::array();
  for (const auto& school : problem.schools) {
    Json s;
    s["id"] = school.id.value;
    s["capacity"] = school.capacity;
    s["priorities"] = tier_list(school.priorities.tiers);
    schools.push_back(std::move(s));
  }
  Json doc;
  doc["students"] = std::move(students);
  doc["schools"] = std::move(schools);
  return doc;
}

std::string serialize_instance(const SchoolChoiceProblem& problem) {
  return instance_json(problem).dump(2) + "\n";
}

SchoolChoiceProblem import_csv(const std::filesystem::path& rankings,
                               const std::optional<std::filesystem::path>& capacities) {
  SchoolChoiceProblem problem;
  std::map<std::string, std::size_t> school_pos;
  auto school_index = [&](const std::string& id) {
    auto [it, inserted] = school_pos.emplace(id, problem.schools.size());
    if (inserted) problem.schools.push_back({SchoolId{id}, 1, {}});
    return it->second;
  };

  if (capacities) {
    std::istringstream in(read_file(*capacities));
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto cells = split_csv_line(line);
      if (cells.empty() || cells[0].empty()) continue;
      if (cells.size() < 2) {
        throw ParseError({{capacities->string(), line_no, 1, "expected school,capacity"}});
      }
      int capacity = 0;
      try {
        std::size_t used = 0;
        capacity = std::stoi(cells[1], &used);
        if (used != cells[1].size()) throw std::invalid_argument("trailing text");
      } catch (const std::exception&) {
        if (line_no == 1) continue;  // header row
        throw ParseError({{capacities->string(), line_no, 1,
                           "capacity '" + cells[1] + "' is not an integer"}});
      }
      problem.schools[school_index(cells[0])].capacity = capacity;
    }
  }

  std::istringstream in(read_file(rankings));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto cells = split_csv_line(line);
    if (cells.empty() || cells[0].empty()) continue;
    if (line_no == 1) {
      const auto head = lower(cells[0]);
      if (head == "student" || head == "student_id" || head == "id") continue;
    }
    Student student{StudentId{cells[0]}, {}};
    for (std::size_t k = 1; k < cells.size(); ++k) {
      if (cells[k].empty()) continue;
      school_index(cells[k]);
      student.preferences.tiers.push_back({SchoolId{cells[k]}});
    }
    problem.students.push_back(std::move(student));
  }

  const ValidationResult result = validate_problem(problem);
  if (!result.ok()) {
    std::vector<Diagnostic> diagnostics;
    for (const auto& v : result.violations) {
      diagnostics.push_back({rankings.string(), 0, 0, v.path + ": " + v.message});
    }
    throw ParseError(std::move(diagnostics));
  }
  return problem;
}

}  // namespace osm::io
