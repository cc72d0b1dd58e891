#include "bephap/simnet.hpp"

#include <algorithm>
#include <memory>
#include <queue>
#include <tuple>
#include <variant>

#include "bephap/error.hpp"
#include "bephap/hash.hpp"

namespace bephap::simnet {

namespace {

constexpr std::string_view kAdv = "ADV";
constexpr std::string_view kNet = "net";
constexpr std::string_view kAuditor = "AUDITOR";
constexpr std::uint64_t kAdvPeerBase = 1'000'000;
constexpr std::uint64_t kAdvLatencyMs = 1;

struct Delivery {
  std::string from;
  std::string to;
  std::string via;  // fog hop still ahead
  std::uint64_t peer = 0;
  Bytes framed;
};

struct Item {
  std::uint64_t time;
  std::uint64_t seq;
  std::variant<const Step*, Delivery> what;
};

struct Later {
  bool operator()(const Item& a, const Item& b) const {
    return std::tie(a.time, a.seq) > std::tie(b.time, b.seq);
  }
};

struct Arm {
  StepKind kind;
  std::string msg, from, to, label;
  std::size_t offset = 0;
  std::uint8_t mask = 0;
  bool spent = false;
};

struct Captured {
  std::string name, from, to;
  Bytes payload;
};

std::string errc_of(const Error& e) { return std::string(to_string(e.code())); }

class Engine {
 public:
  Engine(const Topology& topo, const Script& script, std::uint64_t seed, ProtocolConfig cfg)
      : topo_(topo), script_(script), root_(seed), net_(root_.fork("net")),
        adv_(root_.fork("adversary")) {
    auto of_kind = [&](NodeKind k) {
      std::vector<const NodeSpec*> out;
      for (const auto& n : topo_.nodes)
        if (n.kind == k) out.push_back(&n);
      return out;
    };
    const NodeSpec* lea_spec = of_kind(NodeKind::Lea).front();
    lea_ = std::make_unique<Lea>(lea_spec->name, root_.fork(lea_spec->name), ledger_, cfg);
    lea_->attach_log(&log_);
    for (const NodeSpec* n : of_kind(NodeKind::Rsm)) {
      auto rsm = std::make_unique<Rsm>(n->name, root_.fork(n->name), *lea_, n->sync_delay_ms);
      rsm->set_fault(n->fault);
      rsm->attach_log(&log_);
      rsm_order_.push_back(rsm.get());
      rsms_.emplace(n->name, std::move(rsm));
    }
    for (const NodeSpec* n : of_kind(NodeKind::Rsu)) {
      auto rsu = std::make_unique<Rsu>(n->name, root_.fork(n->name), *rsms_.at(n->domain), cfg);
      rsu->attach_log(&log_);
      rsu_order_.push_back(rsu.get());
      rsus_.emplace(n->name, std::move(rsu));
    }
    std::uint64_t next_peer = 1;
    for (const NodeSpec* n : of_kind(NodeKind::Vn)) {
      auto vn = std::make_unique<Vn>(n->name, Bytes(n->real_id.begin(), n->real_id.end()),
                                     root_.fork(n->name), cfg);
      vn->attach_log(&log_);
      peer_of_[n->name] = next_peer;
      vn_of_peer_[next_peer++] = n->name;
      vns_.emplace(n->name, std::move(vn));
    }
  }

  Transcript run() {
    for (const auto& s : script_.steps) push(s.at_ms, &s);
    while (!queue_.empty()) {
      Item item = queue_.top();
      queue_.pop();
      now_ = item.time;
      for (Rsm* rsm : rsm_order_) rsm->view().sync(now_);
      if (auto* step = std::get_if<const Step*>(&item.what))
        run_step(**step);
      else
        deliver(std::get<Delivery>(item.what));
      flush();
    }
    for (const auto& e : script_.expect) {
      const std::size_t n = count(e.actor, e.event, e.outcome);
      const bool ok = e.count ? n == *e.count : n >= 1;
      if (!ok)
        out_.unmet.push_back("expect " + e.actor + " " + e.event + " " + e.outcome +
                             (e.count ? " count=" + std::to_string(*e.count) : "") +
                             " (observed " + std::to_string(n) + ")");
    }
    out_.events = log_;
    return std::move(out_);
  }

 private:
  std::size_t count(std::string_view actor, std::string_view event, std::string_view outcome) {
    std::size_t n = 0;
    for (const auto& e : log_.events())
      n += e.actor == actor && e.event == event && e.outcome == outcome;
    return n;
  }

  void push(std::uint64_t t, std::variant<const Step*, Delivery> what) {
    queue_.push(Item{t, seq_++, std::move(what)});
  }

  void event(std::string_view actor, std::string_view ev, std::string_view outcome) {
    log_.record(now_, actor, ev, outcome);
  }

  void flush() {
    const auto& evs = log_.events();
    for (; flushed_ < evs.size(); ++flushed_) out_.lines.push_back(format_event(evs[flushed_]));
  }

  void wire_line(const std::string& from, const std::string& to, const std::string& name,
                 ByteView payload) {
    flush();
    wire::DumpLine d{from + ">" + to, name, Bytes(payload.begin(), payload.end())};
    out_.lines.push_back("t=" + std::to_string(now_) + " msg " + wire::format_dump_line(d));
    out_.messages.push_back(std::move(d));
  }

  void secure_line(const std::string& from, const std::string& to, const std::string& name,
                   ByteView payload) {
    flush();
    out_.lines.push_back("t=" + std::to_string(now_) + " sec " + from + ">" + to + " " + name +
                         " sha256=" + to_hex(sha256(payload)));
  }

  std::string endpoint(std::uint64_t peer) const {
    auto it = vn_of_peer_.find(peer);
    return it == vn_of_peer_.end() ? std::string(kAdv) : it->second;
  }

  /// Open-link send: adversary hooks, link loss, latency, optional fog hop.
  void send(const std::string& from, const std::string& to, std::uint64_t peer,
            const std::string& name, Bytes payload) {
    wire_line(from, to, name, payload);
    if (to == kAdv) {
      push(now_ + kAdvLatencyMs, Delivery{from, to, {}, peer, frame(name, payload)});
      return;
    }
    bool tampered = false;
    for (auto& arm : arms_) {
      if (arm.spent || arm.msg != name || arm.from != from || arm.to != to) continue;
      arm.spent = true;
      switch (arm.kind) {
        case StepKind::Capture:
          captured_[arm.label] = Captured{name, from, to, payload};
          event(kAdv, "capture", name);
          break;
        case StepKind::Tamper:
          if (arm.offset >= payload.size()) {
            event(kAdv, "tamper", "OffsetOutOfRange");
            break;
          }
          payload[arm.offset] ^= arm.mask;
          tampered = true;
          event(kAdv, "tamper", name);
          break;
        case StepKind::Drop:
          event(kAdv, "drop", name);
          return;
        default:
          break;
      }
    }
    if (tampered) wire_line(std::string(kAdv), to, name, payload);

    const LinkSpec* link = topo_.link(from, to);
    if (!link) {  // a spliced peer with no radio link of its own
      push(now_ + kAdvLatencyMs, Delivery{from, to, {}, peer, frame(name, payload)});
      return;
    }
    if (link->drop > 0.0 && net_.unit() < link->drop) {
      event(kNet, "drop", name);
      return;
    }
    std::uint64_t latency = link->latency_ms;
    if (link->jitter_ms) latency += net_.uniform(link->jitter_ms + 1);
    push(now_ + latency, Delivery{from, to, link->via, peer, frame(name, payload)});
  }

  void adversary_send(const std::string& to, std::uint64_t peer, const std::string& name,
                      const Bytes& payload, std::uint64_t delay) {
    wire_line(std::string(kAdv), to, name, payload);
    push(now_ + delay + kAdvLatencyMs, Delivery{std::string(kAdv), to, {}, peer, frame(name, payload)});
  }

  std::uint64_t fresh_adv_peer() { return kAdvPeerBase + adv_peers_++; }

  void deliver(Delivery d) {
    if (!d.via.empty()) {
      event(d.via, "forward", unframe(d.framed).first);
      const std::uint64_t lat = topo_.node(d.via)->latency_ms;
      d.via.clear();
      push(now_ + lat, std::move(d));
      return;
    }
    auto [name, payload] = unframe(d.framed);
    if (d.to == kAdv) {
      event(kAdv, "receive", name);
      return;
    }
    if (auto it = rsus_.find(d.to); it != rsus_.end())
      to_rsu(*it->second, d.peer, name, payload);
    else if (auto v = vns_.find(d.to); v != vns_.end())
      to_vn(*v->second, name, payload);
  }

  void to_rsu(Rsu& rsu, std::uint64_t peer, const std::string& name, const Bytes& payload) {
    if (name == "REQ") {
      wire::AuthRequest req;
      try {
        req = wire::decode_request(payload);
      } catch (const Error& e) {
        event(rsu.id(), "handle_request", errc_of(e));
        return;
      }
      try {
        const auto rep = rsu.handle_request(peer, req, now_);
        send(rsu.id(), endpoint(peer), peer, "REP", wire::encode(rep));
      } catch (const Error&) {
      }
    } else if (name == "ACK") {
      wire::AuthAck ack;
      try {
        ack = wire::decode_ack(payload);
      } catch (const Error& e) {
        event(rsu.id(), "handle_ack", errc_of(e));
        return;
      }
      try {
        rsu.handle_ack(peer, ack, now_);
      } catch (const Error&) {
        return;
      }
      if (auto v = vn_of_peer_.find(peer); v != vn_of_peer_.end()) {
        const auto vks = vns_.at(v->second)->session_key();
        event(kNet, "ks_agreement", vks && vks == rsu.session_key(peer) ? "Equal" : "Mismatch");
      }
    } else {
      event(rsu.id(), "receive", "Unexpected" + name);
    }
  }

  void to_vn(Vn& vn, const std::string& name, const Bytes& payload) {
    if (name == "REP") {
      wire::AuthReply rep;
      try {
        rep = wire::decode_reply(payload);
      } catch (const Error& e) {
        event(vn.id(), "handle_reply", errc_of(e));
        return;
      }
      try {
        const auto ack = vn.handle_reply(rep, now_);
        send(vn.id(), target_[vn.id()], peer_of_.at(vn.id()), "ACK", wire::encode(ack));
      } catch (const Error&) {
      }
    } else if (name == "UPD") {
      try {
        vn.apply_update(wire::decode_update(payload), now_);
      } catch (const Error& e) {
        event(vn.id(), "apply_update", errc_of(e));
      }
    } else {
      event(vn.id(), "receive", "Unexpected" + name);
    }
  }

  std::optional<TraceResult> trace(Rsu& rsu, const Vn& vn) {
    Evidence ev;
    try {
      ev = rsu.report_malicious(peer_of_.at(vn.id())).first;
    } catch (const Error& e) {
      event(rsu.id(), "report", errc_of(e));
      return std::nullopt;
    }
    try {
      TraceResult r = lea_->trace(ev, now_);
      event(kNet, "trace_identity", r.id == vn.real_id() ? "Match" : "Mismatch");
      out_.traces.push_back(r);
      return r;
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  void run_step(const Step& s) {
    const auto& a = s.args;
    switch (s.kind) {
      case StepKind::Register: {
        Vn& vn = *vns_.at(a[0]);
        Rsm& rsm = *rsms_.at(a[1]);
        try {
          const auto req = vn.begin_registration(lea_->params());
          secure_line(vn.id(), rsm.id(), "REG_REQ", wire::encode(req));
          secure_line(rsm.id(), lea_->id(), "REG_REQ", wire::encode(req));
          const auto receipt = rsm.forward_registration(req, now_);
          secure_line(lea_->id(), rsm.id(), "RECEIPT", wire::encode(receipt));
          const auto reply = rsm.complete_registration(receipt, now_);
          secure_line(rsm.id(), vn.id(), "REG_REP", wire::encode(reply));
          vn.finish_registration(reply, ledger_, now_);
          if (std::size_t pool = topo_.node(vn.id())->pool) vn.precompute(pool);
        } catch (const Error&) {
        }
        break;
      }
      case StepKind::Handover: {
        Vn& vn = *vns_.at(a[0]);
        // pk_RSU comes from the directory broadcast
        const PublicKeys* keys = lea_->directory().rsu(a[1]);
        try {
          const auto req = vn.start_handover(keys->ver, now_);
          target_[vn.id()] = a[1];
          send(vn.id(), a[1], peer_of_.at(vn.id()), "REQ", wire::encode(req));
        } catch (const Error&) {
        }
        break;
      }
      case StepKind::Report: {
        Rsu& rsu = *rsus_.at(a[0]);
        try {
          auto [ev, ch] = rsu.report_malicious(peer_of_.at(a[1]));
          event(rsu.id(), "report", "Reported");
          rsu.rsm().revoke(ch, now_);
        } catch (const Error& e) {
          event(rsu.id(), "report", errc_of(e));
        }
        break;
      }
      case StepKind::Rotate: {
        const auto report = rotate_group_key(*lea_, rsm_order_, rsu_order_, now_);
        event(lea_->id(), "rotate_updates", std::to_string(report.updates.size()));
        event(lea_->id(), "rotate_skipped_revoked", std::to_string(report.skipped_revoked));
        for (const auto& u : report.updates)
          send(u.rsu_id, endpoint(u.peer), u.peer, "UPD", wire::encode(u.msg));
        break;
      }
      case StepKind::Trace:
        trace(*rsus_.at(a[0]), *vns_.at(a[1]));
        break;
      case StepKind::Audit: {
        auto r = trace(*rsus_.at(a[0]), *vns_.at(a[1]));
        if (!r) break;
        FrameClaim claim{r->evidence, r->id, r->d_star, r->txid};
        if (const auto who = s.opt("claim"); !who.empty()) {
          const Vn& victim = *vns_.at(who);
          claim.claimed_id = victim.real_id();
          if (victim.registered()) claim.txid_h = victim.credential().txid;
        }
        std::string verdict;
        try {
          verdict = std::string(
              to_string(audit_frame_claim(claim, lea_->directory(), lea_->params().lea_ver,
                                          ledger_)));
        } catch (const Error& e) {
          verdict = errc_of(e);
        }
        event(kAuditor, "audit", verdict);
        out_.audits.push_back(verdict);
        break;
      }
      case StepKind::Capture:
      case StepKind::Tamper:
      case StepKind::Drop: {
        const auto gt = a[1].find('>');
        Arm arm{s.kind, a[0], a[1].substr(0, gt), a[1].substr(gt + 1), s.opt("as")};
        if (s.kind == StepKind::Tamper) {
          arm.offset = std::stoull(s.opt("offset"));
          arm.mask = static_cast<std::uint8_t>(std::stoul(s.opt("xor"), nullptr, 16));
        }
        arms_.push_back(std::move(arm));
        break;
      }
      case StepKind::Replay: {
        auto it = captured_.find(a[0]);
        if (it == captured_.end()) {
          event(kAdv, "replay", "NothingCaptured");
          break;
        }
        const Captured& c = it->second;
        const std::string to = s.opt("to", c.to);
        const std::string as = s.opt("peer");
        const std::uint64_t peer = as.empty() ? fresh_adv_peer() : peer_of_.at(as);
        adversary_send(to, peer, c.name, c.payload, std::stoull(s.opt("delay", "0")));
        break;
      }
      case StepKind::Inject: {
        const std::string as = s.opt("peer");
        const std::uint64_t peer = as.empty() ? fresh_adv_peer() : peer_of_.at(as);
        adversary_send(s.opt("to"), peer, a[0], from_hex(s.opt("hex")),
                       std::stoull(s.opt("delay", "0")));
        break;
      }
      case StepKind::Impersonate: {
        // Well-formed REQs built from public data only: no (GK, b), no trapdoor.
        const std::size_t n = std::stoull(s.opt("count", "1"));
        for (std::size_t i = 0; i < n; ++i) {
          wire::AuthRequest f;
          f.pid = adv_.bytes<kPidBytes>();
          f.m = Scalar::random(adv_);
          const GroupPoint p = base_mul(Scalar::random(adv_));
          f.a = p.has_even_y() ? p : -p;
          f.s1 = adv_.bytes<wire::kS1Bytes>();
          f.t1 = Timestamp::from_ms(now_);
          adversary_send(a[0], fresh_adv_peer(), "REQ", wire::encode(f), 0);
        }
        break;
      }
    }
  }

  const Topology& topo_;
  const Script& script_;
  Rng root_;
  Rng net_;
  Rng adv_;
  ledger::Ledger ledger_;
  EventLog log_;
  std::unique_ptr<Lea> lea_;
  std::map<std::string, std::unique_ptr<Rsm>> rsms_;
  std::map<std::string, std::unique_ptr<Rsu>> rsus_;
  std::map<std::string, std::unique_ptr<Vn>> vns_;
  std::vector<Rsm*> rsm_order_;
  std::vector<Rsu*> rsu_order_;
  std::map<std::string, std::uint64_t> peer_of_;
  std::map<std::uint64_t, std::string> vn_of_peer_;
  std::map<std::string, std::string> target_;  // VN → RSU it is handing over to
  std::vector<Arm> arms_;
  std::map<std::string, Captured> captured_;
  std::uint64_t adv_peers_ = 0;
  std::priority_queue<Item, std::vector<Item>, Later> queue_;
  std::uint64_t seq_ = 0;
  std::uint64_t now_ = 0;
  std::size_t flushed_ = 0;
  Transcript out_;
};

}  // namespace

std::string Transcript::text() const {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

std::size_t Transcript::count(std::string_view actor, std::string_view event,
                              std::string_view outcome) const {
  std::size_t n = 0;
  for (const auto& e : events.events())
    n += e.actor == actor && e.event == event && e.outcome == outcome;
  return n;
}

std::size_t Transcript::bytes_of(std::string_view name) const {
  for (const auto& m : messages)
    if (m.name == name) return m.payload.size();
  return 0;
}

Transcript simulate(const Topology& topo, const Script& script, std::uint64_t seed,
                    ProtocolConfig cfg) {
  topo.validate();
  script.validate(topo);
  return Engine(topo, script, seed, cfg).run();
}

Transcript run_scenario(const Topology& topo, const Script& script, std::uint64_t seed,
                        ProtocolConfig cfg) {
  Transcript t = simulate(topo, script, seed, cfg);
  if (!t.unmet.empty()) {
    std::string what = "event queue drained with unmet expectations:";
    for (const auto& u : t.unmet) what += "\n  " + u;
    throw Error(Errc::DeadlockDetected, what);
  }
  return t;
}

Transcript run_scenario(const Scenario& sc) {
  return run_scenario(sc.topology, sc.script, sc.seed, sc.cfg);
}

}  // namespace bephap::simnet
