#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "bephap/error.hpp"
#include "bephap/simnet.hpp"

namespace bephap::simnet {

namespace {

constexpr std::string_view kOpenMessages[] = {"REQ", "REP", "ACK", "UPD"};

bool is_open_message(std::string_view m) {
  return std::find(std::begin(kOpenMessages), std::end(kOpenMessages), m) !=
         std::end(kOpenMessages);
}

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw Error(Errc::ScenarioParse, "line " + std::to_string(line) + ": " + what);
}

[[noreturn]] void invalid(const std::string& what) { throw Error(Errc::ScenarioInvalid, what); }

std::uint64_t to_u64(std::string_view s, int line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    parse_error(line, "expected an unsigned integer, got '" + std::string(s) + "'");
  return v;
}

double to_double(std::string_view s, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    parse_error(line, "expected a number, got '" + std::string(s) + "'");
  }
}

struct Tokens {
  std::vector<std::string> pos;
  std::map<std::string, std::string> kv;
};

Tokens split(const std::string& line, int lineno) {
  Tokens t;
  std::istringstream in(line);
  std::string w;
  while (in >> w) {
    auto eq = w.find('=');
    if (eq == std::string::npos) {
      if (!t.kv.empty()) parse_error(lineno, "positional argument after options: " + w);
      t.pos.push_back(w);
    } else {
      if (eq == 0 || eq + 1 == w.size()) parse_error(lineno, "malformed option: " + w);
      if (!t.kv.emplace(w.substr(0, eq), w.substr(eq + 1)).second)
        parse_error(lineno, "duplicate option: " + w);
    }
  }
  return t;
}

void only_keys(const Tokens& t, std::initializer_list<std::string_view> allowed, int line) {
  for (const auto& [k, v] : t.kv)
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      parse_error(line, "unknown option: " + k);
}

NodeKind parse_kind(const std::string& s, int line) {
  if (s == "lea") return NodeKind::Lea;
  if (s == "rsm") return NodeKind::Rsm;
  if (s == "rsu") return NodeKind::Rsu;
  if (s == "vn") return NodeKind::Vn;
  if (s == "fog") return NodeKind::Fog;
  parse_error(line, "unknown node kind: " + s);
}

const std::map<std::string, std::pair<StepKind, std::size_t>, std::less<>> kVerbs = {
    {"register", {StepKind::Register, 2}},   {"handover", {StepKind::Handover, 2}},
    {"report", {StepKind::Report, 2}},       {"rotate", {StepKind::Rotate, 0}},
    {"trace", {StepKind::Trace, 2}},         {"audit", {StepKind::Audit, 2}},
    {"capture", {StepKind::Capture, 2}},     {"replay", {StepKind::Replay, 1}},
    {"tamper", {StepKind::Tamper, 2}},       {"drop", {StepKind::Drop, 2}},
    {"inject", {StepKind::Inject, 1}},       {"impersonate", {StepKind::Impersonate, 1}},
};

std::pair<std::string, std::string> split_direction(const std::string& dir) {
  auto gt = dir.find('>');
  if (gt == std::string::npos || gt == 0 || gt + 1 == dir.size())
    invalid("expected FROM>TO, got '" + dir + "'");
  return {dir.substr(0, gt), dir.substr(gt + 1)};
}

}  // namespace

std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Lea: return "lea";
    case NodeKind::Rsm: return "rsm";
    case NodeKind::Rsu: return "rsu";
    case NodeKind::Vn: return "vn";
    case NodeKind::Fog: return "fog";
  }
  return "?";
}

const NodeSpec* Topology::node(std::string_view name) const {
  for (const auto& n : nodes)
    if (n.name == name) return &n;
  return nullptr;
}

const LinkSpec* Topology::link(std::string_view a, std::string_view b) const {
  for (const auto& l : links)
    if ((l.a == a && l.b == b) || (l.a == b && l.b == a)) return &l;
  return nullptr;
}

bool Topology::is_secure_pair(std::string_view a, std::string_view b) const {
  const NodeSpec* x = node(a);
  const NodeSpec* y = node(b);
  if (!x || !y) return false;
  auto pair = [&](NodeKind p, NodeKind q) {
    return (x->kind == p && y->kind == q) || (x->kind == q && y->kind == p);
  };
  return pair(NodeKind::Lea, NodeKind::Rsm) || pair(NodeKind::Rsm, NodeKind::Rsu) ||
         pair(NodeKind::Vn, NodeKind::Rsm) || pair(NodeKind::Lea, NodeKind::Rsu) ||
         pair(NodeKind::Lea, NodeKind::Vn);
}

void Topology::validate() const {
  std::set<std::string> seen;
  std::size_t leas = 0;
  for (const auto& n : nodes) {
    if (n.name == "ADV" || n.name == "net" || n.name == "AUDITOR")
      invalid("reserved node name: " + n.name);
    if (n.name.find('>') != std::string::npos) invalid("node name contains '>': " + n.name);
    if (!seen.insert(n.name).second) invalid("duplicate node: " + n.name);
    leas += n.kind == NodeKind::Lea;
  }
  if (leas != 1) invalid("exactly one lea node is required");
  for (const auto& n : nodes) {
    if (n.kind != NodeKind::Rsu) continue;
    const NodeSpec* d = node(n.domain);
    if (!d || d->kind != NodeKind::Rsm) invalid(n.name + ": domain must name an rsm node");
  }
  for (const auto& l : links) {
    const NodeSpec* a = node(l.a);
    const NodeSpec* b = node(l.b);
    if (!a || !b) invalid("link names an unknown node: " + l.a + " " + l.b);
    if (is_secure_pair(l.a, l.b))
      invalid("link " + l.a + " " + l.b + " is an implicit secure link and cannot be declared");
    const bool vn_rsu = (a->kind == NodeKind::Vn && b->kind == NodeKind::Rsu) ||
                        (a->kind == NodeKind::Rsu && b->kind == NodeKind::Vn);
    if (!vn_rsu) invalid("open links join a vn and an rsu: " + l.a + " " + l.b);
    if (l.drop < 0.0 || l.drop > 1.0) invalid("drop probability outside [0,1]");
    if (!l.via.empty()) {
      const NodeSpec* f = node(l.via);
      if (!f || f->kind != NodeKind::Fog) invalid("via must name a fog node: " + l.via);
    }
  }
  for (std::size_t i = 0; i < links.size(); ++i)
    for (std::size_t j = i + 1; j < links.size(); ++j)
      if ((links[j].a == links[i].a && links[j].b == links[i].b) ||
          (links[j].a == links[i].b && links[j].b == links[i].a))
        invalid("duplicate link: " + links[i].a + " " + links[i].b);
}

std::string Step::opt(const std::string& key, std::string fallback) const {
  auto it = opts.find(key);
  return it == opts.end() ? fallback : it->second;
}

void Script::validate(const Topology& topo) const {
  auto need = [&](const Step& s, const std::string& name, NodeKind kind) {
    const NodeSpec* n = topo.node(name);
    if (!n || n->kind != kind)
      invalid("line " + std::to_string(s.line) + ": " + name + " is not a " +
              std::string(to_string(kind)) + " node");
  };
  auto open_link = [&](const Step& s, const std::string& msg, const std::string& dir) {
    if (!is_open_message(msg))
      invalid("line " + std::to_string(s.line) + ": " + msg +
              " does not travel on an open link");
    auto [from, to] = split_direction(dir);
    if (!topo.node(from) || !topo.node(to))
      invalid("line " + std::to_string(s.line) + ": unknown node in " + dir);
    if (topo.is_secure_pair(from, to))
      invalid("line " + std::to_string(s.line) + ": " + dir +
              " is a secure link; the adversary cannot reach it");
    if (!topo.link(from, to))
      invalid("line " + std::to_string(s.line) + ": no link " + dir);
    const bool upstream = msg == "REQ" || msg == "ACK";
    const NodeKind src = topo.node(from)->kind;
    if ((upstream && src != NodeKind::Vn) || (!upstream && src != NodeKind::Rsu))
      invalid("line " + std::to_string(s.line) + ": " + msg + " never flows " + dir);
  };

  std::map<std::string, std::uint64_t> labels;
  for (const auto& s : steps) {
    const auto& a = s.args;
    switch (s.kind) {
      case StepKind::Register:
        need(s, a[0], NodeKind::Vn);
        need(s, a[1], NodeKind::Rsm);
        break;
      case StepKind::Handover:
        need(s, a[0], NodeKind::Vn);
        need(s, a[1], NodeKind::Rsu);
        if (!topo.link(a[0], a[1]))
          invalid("line " + std::to_string(s.line) + ": no link " + a[0] + " " + a[1]);
        break;
      case StepKind::Report:
      case StepKind::Trace:
      case StepKind::Audit:
        need(s, a[0], NodeKind::Rsu);
        need(s, a[1], NodeKind::Vn);
        if (s.kind == StepKind::Audit && !s.opt("claim").empty())
          need(s, s.opt("claim"), NodeKind::Vn);
        break;
      case StepKind::Rotate:
        break;
      case StepKind::Capture:
        open_link(s, a[0], a[1]);
        if (s.opt("as").empty())
          invalid("line " + std::to_string(s.line) + ": capture needs as=LABEL");
        labels[s.opt("as")] = s.at_ms;
        break;
      case StepKind::Tamper:
        open_link(s, a[0], a[1]);
        if (s.opt("offset").empty() || s.opt("xor").empty())
          invalid("line " + std::to_string(s.line) + ": tamper needs offset= and xor=");
        break;
      case StepKind::Drop:
        open_link(s, a[0], a[1]);
        break;
      case StepKind::Replay:
      case StepKind::Inject: {
        if (s.kind == StepKind::Replay) {
          auto it = labels.find(a[0]);
          if (it == labels.end() || it->second > s.at_ms)
            invalid("line " + std::to_string(s.line) + ": replay of uncaptured label " + a[0]);
        } else {
          if (!is_open_message(a[0]))
            invalid("line " + std::to_string(s.line) + ": cannot inject " + a[0]);
          if (s.opt("to").empty() || s.opt("hex").empty())
            invalid("line " + std::to_string(s.line) + ": inject needs to= and hex=");
        }
        const std::string to = s.opt("to");
        if (!to.empty()) {
          const NodeSpec* n = topo.node(to);
          if (!n || (n->kind != NodeKind::Rsu && n->kind != NodeKind::Vn))
            invalid("line " + std::to_string(s.line) + ": adversary traffic reaches only vn "
                    "and rsu nodes, not " + to);
        }
        if (!s.opt("peer").empty()) need(s, s.opt("peer"), NodeKind::Vn);
        break;
      }
      case StepKind::Impersonate:
        need(s, a[0], NodeKind::Rsu);
        break;
    }
  }
}

Scenario parse_scenario(std::string_view text) {
  Scenario sc;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    // "key = value" globals
    if (auto eq = raw.find(" = "); eq != std::string::npos) {
      std::istringstream kv(raw);
      std::string key, sep, value, extra;
      if (!(kv >> key >> sep >> value) || sep != "=" || (kv >> extra))
        parse_error(lineno, "malformed setting");
      if (key == "seed") sc.seed = to_u64(value, lineno);
      else if (key == "freshness_ms") sc.cfg.freshness_ms = static_cast<std::uint32_t>(to_u64(value, lineno));
      else if (key == "t_exp_ms") sc.cfg.t_exp_ms = to_u64(value, lineno);
      else parse_error(lineno, "unknown setting: " + key);
      continue;
    }
    Tokens t = split(raw, lineno);
    if (t.pos.empty()) {
      if (!t.kv.empty()) parse_error(lineno, "options without a directive");
      continue;
    }
    const std::string& head = t.pos[0];
    if (head == "node") {
      if (t.pos.size() != 3) parse_error(lineno, "node NAME KIND [options]");
      NodeSpec n;
      n.name = t.pos[1];
      n.kind = parse_kind(t.pos[2], lineno);
      only_keys(t, {"domain", "sync_delay", "id", "pool", "latency", "fault"}, lineno);
      if (t.kv.contains("domain")) n.domain = t.kv["domain"];
      if (t.kv.contains("sync_delay")) n.sync_delay_ms = to_u64(t.kv["sync_delay"], lineno);
      n.real_id = t.kv.contains("id") ? t.kv["id"] : n.name;
      if (t.kv.contains("pool")) n.pool = to_u64(t.kv["pool"], lineno);
      if (t.kv.contains("latency")) n.latency_ms = to_u64(t.kv["latency"], lineno);
      if (t.kv.contains("fault")) {
        if (t.kv["fault"] != "swap_txid") parse_error(lineno, "unknown fault: " + t.kv["fault"]);
        n.fault = RsmFault::SwapTxid;
      }
      sc.topology.nodes.push_back(std::move(n));
    } else if (head == "link") {
      if (t.pos.size() != 3) parse_error(lineno, "link A B [options]");
      only_keys(t, {"latency", "jitter", "drop", "via"}, lineno);
      LinkSpec l;
      l.a = t.pos[1];
      l.b = t.pos[2];
      if (t.kv.contains("latency")) l.latency_ms = to_u64(t.kv["latency"], lineno);
      if (t.kv.contains("jitter")) l.jitter_ms = to_u64(t.kv["jitter"], lineno);
      if (t.kv.contains("drop")) l.drop = to_double(t.kv["drop"], lineno);
      if (t.kv.contains("via")) l.via = t.kv["via"];
      sc.topology.links.push_back(std::move(l));
    } else if (head == "at") {
      if (t.pos.size() < 3) parse_error(lineno, "at MS VERB ...");
      Step s;
      s.line = lineno;
      s.at_ms = to_u64(t.pos[1], lineno);
      auto verb = kVerbs.find(t.pos[2]);
      if (verb == kVerbs.end()) parse_error(lineno, "unknown step: " + t.pos[2]);
      s.kind = verb->second.first;
      s.args.assign(t.pos.begin() + 3, t.pos.end());
      if (s.args.size() != verb->second.second)
        parse_error(lineno, t.pos[2] + " takes " + std::to_string(verb->second.second) +
                                " argument(s)");
      s.opts = std::move(t.kv);
      for (const char* num : {"offset", "delay", "count"})
        if (s.opts.contains(num)) to_u64(s.opts[num], lineno);
      if (s.opts.contains("xor")) {
        const auto& x = s.opts["xor"];
        unsigned v = 0;
        auto [p, ec] = std::from_chars(x.data() + (x.starts_with("0x") ? 2 : 0),
                                       x.data() + x.size(), v, 16);
        if (ec != std::errc() || p != x.data() + x.size() || v == 0 || v > 0xff)
          parse_error(lineno, "xor must be a nonzero byte");
      }
      if (s.opts.contains("hex")) {
        try {
          from_hex(s.opts["hex"]);
        } catch (const std::invalid_argument&) {
          parse_error(lineno, "bad hex payload");
        }
      }
      sc.script.steps.push_back(std::move(s));
    } else if (head == "expect") {
      if (t.pos.size() != 4) parse_error(lineno, "expect ACTOR EVENT OUTCOME [count=N]");
      only_keys(t, {"count"}, lineno);
      Expectation e{t.pos[1], t.pos[2], t.pos[3], std::nullopt};
      if (t.kv.contains("count")) e.count = to_u64(t.kv["count"], lineno);
      sc.script.expect.push_back(std::move(e));
    } else {
      parse_error(lineno, "unknown directive: " + head);
    }
  }
  std::stable_sort(sc.script.steps.begin(), sc.script.steps.end(),
                   [](const Step& a, const Step& b) { return a.at_ms < b.at_ms; });
  sc.topology.validate();
  sc.script.validate(sc.topology);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::ScenarioParse, "cannot open " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_scenario(buf.str());
}

namespace {
constexpr std::pair<std::string_view, std::uint8_t> kFrameTypes[] = {
    {"REQ", 1}, {"REP", 2}, {"ACK", 3}, {"UPD", 4}};
}

Bytes frame(std::string_view name, ByteView payload) {
  for (auto [n, code] : kFrameTypes) {
    if (n != name) continue;
    Bytes out{kFrameVersion, code};
    append(out, payload);
    return out;
  }
  throw Error(Errc::WrongLength, "unknown frame type " + std::string(name));
}

std::pair<std::string, Bytes> unframe(ByteView framed) {
  if (framed.size() < 2 || framed[0] != kFrameVersion)
    throw Error(Errc::WrongLength, "frame header");
  for (auto [n, code] : kFrameTypes)
    if (code == framed[1]) return {std::string(n), Bytes(framed.begin() + 2, framed.end())};
  throw Error(Errc::WrongLength, "frame type");
}

}  // namespace bephap::simnet
