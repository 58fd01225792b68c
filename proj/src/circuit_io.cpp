#include "qwt/circuit.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>

#include "qwt/errors.hpp"
#include "qwt/reference.hpp"
#include "json.hpp"

namespace qwt {

namespace {

using nlohmann::ordered_json;

const std::map<std::string, GateKind>& kind_table() {
  static const std::map<std::string, GateKind> table = [] {
    std::map<std::string, GateKind> t;
    for (int k = 0; k <= static_cast<int>(GateKind::REFLECT); ++k) {
      auto kind = static_cast<GateKind>(k);
      t[kind_name(kind)] = kind;
    }
    return t;
  }();
  return table;
}

ordered_json gate_to_json(const Gate& g) {
  ordered_json j;
  j["kind"] = kind_name(g.kind);
  j["targets"] = g.targets;
  if (!g.controls.empty()) {
    ordered_json ctrls = ordered_json::array();
    for (const Control& c : g.controls) {
      ordered_json jc;
      jc["qubit"] = c.qubit;
      if (!c.polarity) jc["polarity"] = false;
      ctrls.push_back(jc);
    }
    j["controls"] = ctrls;
  }
  if (!g.operand.empty()) j["operand"] = g.operand;
  if (g.angle != 0.0) j["angle"] = g.angle;
  if (!g.angles.empty()) j["angles"] = g.angles;
  if (g.constant != 0) j["constant"] = g.constant;
  if (!g.dense.empty()) j["dense"] = g.dense;
  if (g.inverted) j["inverted"] = true;
  if (!g.borrowed.empty()) j["borrowed"] = g.borrowed;
  return j;
}

Gate gate_from_json(const ordered_json& j) {
  Gate g;
  const auto name = j.at("kind").get<std::string>();
  auto it = kind_table().find(name);
  if (it == kind_table().end()) throw IoError("unknown gate kind: " + name);
  g.kind = it->second;
  g.targets = j.at("targets").get<std::vector<int>>();
  if (j.contains("controls")) {
    for (const auto& jc : j.at("controls")) {
      Control c;
      c.qubit = jc.at("qubit").get<int>();
      c.polarity = jc.value("polarity", true);
      g.controls.push_back(c);
    }
  }
  if (j.contains("operand")) g.operand = j.at("operand").get<std::vector<int>>();
  g.angle = j.value("angle", 0.0);
  if (j.contains("angles")) g.angles = j.at("angles").get<std::vector<double>>();
  g.constant = j.value("constant", std::uint64_t{0});
  if (j.contains("dense")) g.dense = j.at("dense").get<std::vector<double>>();
  g.inverted = j.value("inverted", false);
  if (j.contains("borrowed")) g.borrowed = j.at("borrowed").get<std::vector<int>>();
  return g;
}

}  // namespace

std::string circuit_to_json(const Circuit& c) {
  ordered_json j;
  j["layout"]["sys"] = c.layout.sys;
  j["layout"]["anc"] = c.layout.anc;
  j["layout"]["aux"] = c.layout.aux;
  j["layout"]["par"] = c.layout.par;
  j["layout"]["scratch"] = c.layout.scratch;
  j["gates"] = ordered_json::array();
  for (const Gate& g : c.gates) j["gates"].push_back(gate_to_json(g));
  return j.dump(2) + "\n";
}

Circuit circuit_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("circuit JSON parse failure: ") + e.what());
  }
  Circuit c;
  try {
    const auto& jl = j.at("layout");
    c.layout.sys = jl.at("sys").get<int>();
    c.layout.anc = jl.at("anc").get<int>();
    c.layout.aux = jl.at("aux").get<bool>();
    c.layout.par = jl.at("par").get<bool>();
    c.layout.scratch = jl.at("scratch").get<int>();
    for (const auto& jg : j.at("gates")) c.gates.push_back(gate_from_json(jg));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("circuit JSON shape failure: ") + e.what());
  }
  validate_circuit(c);
  return c;
}

namespace {

// QASM export handles the lowered alphabet only; each kind carries a fixed
// number of plain |1>-controls.
int qasm_control_arity(GateKind k) {
  switch (k) {
    case GateKind::CNOT:
    case GateKind::CZ:
      return 1;
    case GateKind::TOFFOLI:
      return 2;
    default:
      return 0;
  }
}

const char* qasm_name(GateKind k) {
  switch (k) {
    case GateKind::NOT: return "x";
    case GateKind::H: return "h";
    case GateKind::Z: return "z";
    case GateKind::CNOT: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::TOFFOLI: return "ccx";
    case GateKind::RY: return "ry";
    case GateKind::SWAP: return "swap";
    default: return nullptr;
  }
}

}  // namespace

std::string circuit_to_qasm(const Circuit& c) {
  std::ostringstream out;
  out << "OPENQASM 3.0;\n";
  out << "qubit[" << c.layout.width() << "] q;\n";
  for (const Gate& g : c.gates) {
    const char* name = qasm_name(g.kind);
    if (name == nullptr || !is_elementary(g.kind))
      throw IoError(std::string("gate kind ") + kind_name(g.kind) +
                    " has no QASM form; lower the circuit first");
    if (static_cast<int>(g.controls.size()) != qasm_control_arity(g.kind))
      throw IoError(std::string("gate kind ") + kind_name(g.kind) +
                    " carries extra controls; lower the circuit first");
    for (const Control& ctl : g.controls)
      if (!ctl.polarity)
        throw IoError("negative control has no QASM form; lower the circuit first");
    out << name;
    if (g.kind == GateKind::RY) out << "(" << format_real(g.angle) << ")";
    out << " ";
    bool first = true;
    for (const Control& ctl : g.controls) {
      if (!first) out << ", ";
      out << "q[" << ctl.qubit << "]";
      first = false;
    }
    for (int t : g.targets) {
      if (!first) out << ", ";
      out << "q[" << t << "]";
      first = false;
    }
    out << ";\n";
  }
  return out.str();
}

namespace {

struct QasmCursor {
  const std::string& text;
  size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' ||
                                 text[pos] == '\n' || text[pos] == '\r'))
      ++pos;
  }
  bool eat(char c) {
    skip_space();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw IoError(std::string("QASM parse: expected '") + c + "' at offset " +
                    std::to_string(pos));
  }
  std::string word() {
    skip_space();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
            text[pos] == '.'))
      ++pos;
    if (pos == start) throw IoError("QASM parse: expected a word at offset " +
                                    std::to_string(pos));
    return text.substr(start, pos - start);
  }
  int index() {
    expect('[');
    std::string w = word();
    expect(']');
    return std::stoi(w);
  }
  double number() {
    skip_space();
    const char* begin = text.c_str() + pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw IoError("QASM parse: expected a number at offset " +
                                    std::to_string(pos));
    pos += end - begin;
    return v;
  }
  bool done() {
    skip_space();
    return pos >= text.size();
  }
};

}  // namespace

Circuit circuit_from_qasm(const std::string& text) {
  QasmCursor cur{text};
  if (cur.word() != "OPENQASM") throw IoError("QASM parse: missing OPENQASM header");
  cur.word();  // version
  cur.expect(';');
  if (cur.word() != "qubit") throw IoError("QASM parse: missing qubit declaration");
  int width = cur.index();
  if (width <= 0) throw IoError("QASM parse: non-positive register width");
  if (cur.word() != "q") throw IoError("QASM parse: register must be named q");
  cur.expect(';');

  Circuit c;
  c.layout = RegisterLayout::raw(width);
  while (!cur.done()) {
    std::string name = cur.word();
    Gate g;
    int controls = 0;
    if (name == "x") {
      g.kind = GateKind::NOT;
    } else if (name == "h") {
      g.kind = GateKind::H;
    } else if (name == "z") {
      g.kind = GateKind::Z;
    } else if (name == "cx") {
      g.kind = GateKind::CNOT;
      controls = 1;
    } else if (name == "cz") {
      g.kind = GateKind::CZ;
      controls = 1;
    } else if (name == "ccx") {
      g.kind = GateKind::TOFFOLI;
      controls = 2;
    } else if (name == "ry") {
      g.kind = GateKind::RY;
      cur.expect('(');
      g.angle = cur.number();
      cur.expect(')');
    } else if (name == "swap") {
      g.kind = GateKind::SWAP;
    } else {
      throw IoError("QASM parse: unsupported gate " + name);
    }
    int args = (g.kind == GateKind::SWAP) ? 2 : controls + 1;
    for (int i = 0; i < args; ++i) {
      if (i > 0) cur.expect(',');
      if (cur.word() != "q") throw IoError("QASM parse: arguments must index q");
      int wire = cur.index();
      if (i < controls)
        g.controls.push_back(Control{wire, true});
      else
        g.targets.push_back(wire);
    }
    cur.expect(';');
    c.gates.push_back(g);
  }
  validate_circuit(c);
  return c;
}

}  // namespace qwt
