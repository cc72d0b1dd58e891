#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "bephap/bytes.hpp"
#include "bephap/curve.hpp"
#include "bephap/pkc.hpp"

namespace bephap::ledger {

using PointKey = ByteArray<kCompressedPointBytes>;

struct Registration {
  Signature sigma;
  GroupPoint ch;
  std::uint64_t t_exp_ms = 0;

  bool operator==(const Registration&) const = default;
};

struct Revocation {
  GroupPoint ch;

  bool operator==(const Revocation&) const = default;
};

using Payload = std::variant<Registration, Revocation>;

struct LedgerTx {
  TxId txid{};
  Payload payload;
  std::uint64_t height = 0;
  std::uint64_t timestamp_ms = 0;

  bool operator==(const LedgerTx&) const = default;
};

/// Tag byte || fields, fixed width per variant.
Bytes encode_payload(const Payload& p);
/// SHA-256(encode_payload(p) || u64 height).
TxId compute_txid(const Payload& p, std::uint64_t height);

enum class Role { Lea, Rsm };

/// Write permission handed out by the ledger at setup. Registrations need
/// the LEA role, revocations an RSM role.
class Capability {
 public:
  Role role() const { return role_; }

 private:
  friend class Ledger;
  Capability(Role role, std::uint64_t ledger_id, std::uint64_t serial)
      : role_(role), ledger_id_(ledger_id), serial_(serial) {}
  Role role_;
  std::uint64_t ledger_id_;
  std::uint64_t serial_;
};

/// The canonical log. Safe for concurrent append and read.
class Ledger {
 public:
  Ledger();
  Ledger(const Ledger&) = delete;
  Ledger& operator=(const Ledger&) = delete;

  Capability grant(Role role);

  /// Throws Unauthorized or DuplicateRegistration.
  TxId append(const Capability& cap, const Payload& payload, std::uint64_t now_ms);

  std::optional<LedgerTx> get(const TxId& txid) const;
  bool verify_inclusion(const TxId& txid, const Payload& payload) const;

  std::uint64_t height() const;
  /// Entries with height in [from, height()).
  std::vector<LedgerTx> since(std::uint64_t from) const;

  void export_snapshot(std::ostream& out) const;
  /// Replaces the log. Throws MalformedSnapshot on any parse or hash error.
  void import_snapshot(std::istream& in);

 private:
  mutable std::mutex mu_;
  std::uint64_t id_;
  std::uint64_t next_serial_ = 0;
  std::set<std::pair<std::uint64_t, Role>> issued_;
  std::vector<LedgerTx> log_;
  std::map<TxId, std::uint64_t> by_txid_;
  std::map<PointKey, std::uint64_t> live_registration_;  // CH -> latest height
};

/// Result of a raw CH lookup; callers decide what revoked or expired means.
struct ChRecord {
  LedgerTx tx;
  bool revoked = false;
  bool expired = false;
};

/// A node's replica. Entries become visible `sync_delay_ms` after they were
/// appended, once `sync(now)` runs. Owned by one actor at a time.
class LedgerView {
 public:
  LedgerView(const Ledger& source, std::string node_id, std::uint64_t sync_delay_ms);

  const std::string& node_id() const { return node_id_; }
  std::uint64_t applied_height() const { return applied_; }
  std::uint64_t sync_delay_ms() const { return delay_; }

  /// Applies every entry appended at or before now - delay.
  void sync(std::uint64_t now_ms);
  /// Applies everything regardless of delay.
  void sync_all();

  /// Live registration for CH: synced, unexpired at now.
  std::optional<LedgerTx> find_by_ch(const GroupPoint& ch, std::uint64_t now_ms) const;
  std::optional<ChRecord> lookup(const GroupPoint& ch, std::uint64_t now_ms) const;
  bool is_revoked(const GroupPoint& ch) const;
  std::optional<LedgerTx> get(const TxId& txid) const;

  /// Digest of the applied prefix, for convergence checks.
  ByteArray<32> state_digest() const;

 private:
  void apply(const LedgerTx& tx);

  const Ledger* source_;
  std::string node_id_;
  std::uint64_t delay_;
  std::uint64_t applied_ = 0;
  std::vector<LedgerTx> entries_;
  std::map<TxId, std::size_t> by_txid_;
  std::map<PointKey, std::size_t> by_ch_;
  std::set<PointKey> revoked_;
};

}  // namespace bephap::ledger
