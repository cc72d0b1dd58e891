#include "bephap/ledger.hpp"

#include <atomic>
#include <istream>
#include <ostream>
#include <sstream>

#include "bephap/error.hpp"
#include "bephap/hash.hpp"

namespace bephap::ledger {

namespace {

constexpr std::uint8_t kRegistrationTag = 0x01;
constexpr std::uint8_t kRevocationTag = 0x02;
constexpr std::string_view kSnapshotHeader = "# bephap-ledger v1";

std::atomic<std::uint64_t> next_ledger_id{1};

const GroupPoint& ch_of(const Payload& p) {
  return std::visit([](const auto& v) -> const GroupPoint& { return v.ch; }, p);
}

}  // namespace

Bytes encode_payload(const Payload& p) {
  Bytes out;
  if (const auto* reg = std::get_if<Registration>(&p)) {
    out.push_back(kRegistrationTag);
    append(out, reg->sigma.encode());
    append(out, reg->ch.compressed());
    append_u64(out, reg->t_exp_ms);
  } else {
    out.push_back(kRevocationTag);
    append(out, std::get<Revocation>(p).ch.compressed());
  }
  return out;
}

TxId compute_txid(const Payload& p, std::uint64_t height) {
  Bytes buf = encode_payload(p);
  append_u64(buf, height);
  return sha256(buf);
}

Ledger::Ledger() : id_(next_ledger_id++) {}

Capability Ledger::grant(Role role) {
  std::lock_guard lock(mu_);
  const std::uint64_t serial = next_serial_++;
  issued_.emplace(serial, role);
  return Capability(role, id_, serial);
}

TxId Ledger::append(const Capability& cap, const Payload& payload, std::uint64_t now_ms) {
  std::lock_guard lock(mu_);
  if (cap.ledger_id_ != id_ || !issued_.contains({cap.serial_, cap.role_}))
    throw Error(Errc::Unauthorized, "capability not issued by this ledger");
  const bool is_registration = std::holds_alternative<Registration>(payload);
  if (is_registration != (cap.role() == Role::Lea))
    throw Error(Errc::Unauthorized, is_registration ? "registration needs LEA" : "revocation needs RSM");

  const PointKey key = ch_of(payload).compressed();
  if (is_registration) {
    auto it = live_registration_.find(key);
    if (it != live_registration_.end()) {
      const auto& prior = std::get<Registration>(log_[it->second].payload);
      if (prior.t_exp_ms > now_ms) throw Error(Errc::DuplicateRegistration);
    }
  }

  const std::uint64_t height = log_.size();
  LedgerTx tx{compute_txid(payload, height), payload, height, now_ms};
  by_txid_.emplace(tx.txid, height);
  if (is_registration) live_registration_[key] = height;
  log_.push_back(std::move(tx));
  return log_.back().txid;
}

std::optional<LedgerTx> Ledger::get(const TxId& txid) const {
  std::lock_guard lock(mu_);
  auto it = by_txid_.find(txid);
  if (it == by_txid_.end()) return std::nullopt;
  return log_[it->second];
}

bool Ledger::verify_inclusion(const TxId& txid, const Payload& payload) const {
  const auto tx = get(txid);
  return tx && compute_txid(payload, tx->height) == txid && tx->payload == payload;
}

std::uint64_t Ledger::height() const {
  std::lock_guard lock(mu_);
  return log_.size();
}

std::vector<LedgerTx> Ledger::since(std::uint64_t from) const {
  std::lock_guard lock(mu_);
  if (from >= log_.size()) return {};
  return {log_.begin() + static_cast<std::ptrdiff_t>(from), log_.end()};
}

void Ledger::export_snapshot(std::ostream& out) const {
  std::lock_guard lock(mu_);
  out << kSnapshotHeader << '\n';
  for (const auto& tx : log_) {
    out << tx.height << ' ' << to_hex(tx.txid) << ' ' << tx.timestamp_ms << ' ';
    if (const auto* reg = std::get_if<Registration>(&tx.payload)) {
      out << "REG " << to_hex(reg->sigma.encode()) << ' ' << to_hex(reg->ch.compressed())
          << ' ' << reg->t_exp_ms;
    } else {
      out << "REV " << to_hex(std::get<Revocation>(tx.payload).ch.compressed());
    }
    out << '\n';
  }
}

void Ledger::import_snapshot(std::istream& in) {
  std::vector<LedgerTx> log;
  std::map<TxId, std::uint64_t> by_txid;
  std::map<PointKey, std::uint64_t> live;
  std::string line;
  if (!std::getline(in, line) || line != kSnapshotHeader)
    throw Error(Errc::MalformedSnapshot, "missing header");
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream fields(line);
      std::uint64_t height = 0, ts = 0;
      std::string txid_hex, kind, ch_hex;
      if (!(fields >> height >> txid_hex >> ts >> kind))
        throw Error(Errc::MalformedSnapshot, "short line");
      Payload payload;
      if (kind == "REG") {
        std::string sig_hex;
        std::uint64_t t_exp = 0;
        if (!(fields >> sig_hex >> ch_hex >> t_exp))
          throw Error(Errc::MalformedSnapshot, "short REG");
        payload = Registration{Signature::decode(from_hex(sig_hex)),
                               GroupPoint::from_compressed(from_hex(ch_hex)), t_exp};
      } else if (kind == "REV") {
        if (!(fields >> ch_hex)) throw Error(Errc::MalformedSnapshot, "short REV");
        payload = Revocation{GroupPoint::from_compressed(from_hex(ch_hex))};
      } else {
        throw Error(Errc::MalformedSnapshot, "unknown kind " + kind);
      }
      std::string extra;
      if (fields >> extra) throw Error(Errc::MalformedSnapshot, "trailing data");
      const auto txid_bytes = from_hex(txid_hex);
      if (height != log.size() || txid_bytes.size() != kTxIdBytes)
        throw Error(Errc::MalformedSnapshot, "height or txid width");
      LedgerTx tx{compute_txid(payload, height), payload, height, ts};
      if (!std::equal(tx.txid.begin(), tx.txid.end(), txid_bytes.begin()))
        throw Error(Errc::MalformedSnapshot, "txid mismatch at height " + std::to_string(height));
      by_txid.emplace(tx.txid, height);
      if (kind == "REG") live[ch_of(payload).compressed()] = height;
      log.push_back(std::move(tx));
    }
  } catch (const std::invalid_argument& e) {
    throw Error(Errc::MalformedSnapshot, e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::MalformedSnapshot) throw;
    throw Error(Errc::MalformedSnapshot, e.what());
  }
  std::lock_guard lock(mu_);
  log_ = std::move(log);
  by_txid_ = std::move(by_txid);
  live_registration_ = std::move(live);
}

LedgerView::LedgerView(const Ledger& source, std::string node_id, std::uint64_t sync_delay_ms)
    : source_(&source), node_id_(std::move(node_id)), delay_(sync_delay_ms) {}

void LedgerView::sync(std::uint64_t now_ms) {
  for (const auto& tx : source_->since(applied_)) {
    if (tx.timestamp_ms + delay_ > now_ms) break;
    apply(tx);
  }
}

void LedgerView::sync_all() {
  for (const auto& tx : source_->since(applied_)) apply(tx);
}

void LedgerView::apply(const LedgerTx& tx) {
  const std::size_t idx = entries_.size();
  entries_.push_back(tx);
  by_txid_.emplace(tx.txid, idx);
  const PointKey key = ch_of(tx.payload).compressed();
  if (std::holds_alternative<Registration>(tx.payload))
    by_ch_[key] = idx;
  else
    revoked_.insert(key);
  applied_ = tx.height + 1;
}

std::optional<ChRecord> LedgerView::lookup(const GroupPoint& ch, std::uint64_t now_ms) const {
  const PointKey key = ch.compressed();
  auto it = by_ch_.find(key);
  if (it == by_ch_.end()) return std::nullopt;
  const LedgerTx& tx = entries_[it->second];
  const auto& reg = std::get<Registration>(tx.payload);
  return ChRecord{tx, revoked_.contains(key), reg.t_exp_ms <= now_ms};
}

std::optional<LedgerTx> LedgerView::find_by_ch(const GroupPoint& ch, std::uint64_t now_ms) const {
  auto rec = lookup(ch, now_ms);
  if (!rec || rec->expired) return std::nullopt;
  return std::move(rec->tx);
}

bool LedgerView::is_revoked(const GroupPoint& ch) const {
  return revoked_.contains(ch.compressed());
}

std::optional<LedgerTx> LedgerView::get(const TxId& txid) const {
  auto it = by_txid_.find(txid);
  if (it == by_txid_.end()) return std::nullopt;
  return entries_[it->second];
}

ByteArray<32> LedgerView::state_digest() const {
  Bytes buf;
  for (const auto& tx : entries_) append(buf, tx.txid);
  return sha256(buf);
}

}  // namespace bephap::ledger
