#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bephap/bytes.hpp"
#include "bephap/chameleon.hpp"
#include "bephap/events.hpp"
#include "bephap/hash.hpp"
#include "bephap/ledger.hpp"
#include "bephap/pkc.hpp"
#include "bephap/rng.hpp"
#include "bephap/symmetric.hpp"
#include "bephap/wire.hpp"

namespace bephap {

inline constexpr std::uint64_t kDay = 24ull * 3600 * 1000;

struct ProtocolConfig {
  std::uint32_t freshness_ms = 500;      // Δ
  std::uint64_t t_exp_ms = 30 * kDay;    // registration lifetime
};

/// The published parameter set: curve, λ, hash family and the LEA's public keys.
struct SystemParams {
  std::string curve;
  ByteArray<kScalarBytes> q{};
  ByteArray<kCompressedPointBytes> generator{};
  unsigned lambda_bits = 0;
  std::vector<HashTag> hashes;
  VerifyingKey lea_ver;
  EncryptionKey lea_enc;

  Bytes encode() const;
};

struct PublicKeys {
  VerifyingKey ver;
  EncryptionKey enc;
};

/// Domain-wide (GK, b), versioned by epoch.
struct GroupSecret {
  NonZeroScalar gk;
  NonZeroScalar b;
  std::uint32_t epoch = 0;

  static GroupSecret random(Rng& rng, std::uint32_t epoch);
  static GroupSecret from_message(const wire::GroupKeyMsg& msg);  // throws NonCanonicalScalar
  wire::GroupKeyMsg message() const { return {gk, b, epoch}; }
};

/// Broadcast public keys of every infrastructure node.
class Directory {
 public:
  void add_rsm(const std::string& id, const PublicKeys& keys) { rsms_[id] = keys; }
  void add_rsu(const std::string& id, const PublicKeys& keys) { rsus_[id] = keys; }
  const PublicKeys* rsm(const std::string& id) const;
  const PublicKeys* rsu(const std::string& id) const;
  std::vector<std::string> rsu_ids() const;

 private:
  std::map<std::string, PublicKeys> rsms_;
  std::map<std::string, PublicKeys> rsus_;
};

/// σ_RT over an encoded REQ, produced by the RSU that saw it.
struct Evidence {
  std::string rsu_id;
  Signature sigma_rt;
  Bytes req;
};

struct TraceResult {
  Bytes id;
  SymKey d_star;
  GroupPoint ch;
  TxId txid{};
  Evidence evidence;
};

class Actor {
 public:
  explicit Actor(std::string id) : id_(std::move(id)) {}
  const std::string& id() const { return id_; }
  void attach_log(EventLog* log) { log_ = log; }

 protected:
  void note(std::uint64_t now_ms, std::string_view event, std::string_view outcome) const {
    if (log_) log_->record(now_ms, id_, event, outcome);
  }

 private:
  std::string id_;
  EventLog* log_ = nullptr;
};

class Lea : public Actor {
 public:
  Lea(std::string id, Rng rng, ledger::Ledger& ledger, ProtocolConfig cfg = {});

  const SystemParams& params() const { return params_; }
  const Directory& directory() const { return directory_; }
  Directory& directory() { return directory_; }
  const ProtocolConfig& config() const { return cfg_; }
  ledger::Ledger& ledger() { return *ledger_; }

  /// rsm_init hand-off over the secure channel.
  wire::GroupKeyMsg register_rsm(const std::string& rsm_id, const PublicKeys& keys);
  wire::GroupKeyMsg group_key() const { return secret_.message(); }

  /// Decrypts C1, signs ID||CH||T_Exp, appends the ledger entry and keeps
  /// (ID, TXID). Throws IntegrityFailure, DuplicateRegistration.
  wire::Receipt handle_registration(const wire::RegistrationRequest& req, std::uint64_t now_ms);

  /// Mints the next epoch; earlier epochs stay available for tracing only.
  wire::GroupKeyMsg rotate(std::uint64_t now_ms);

  /// Throws BadEvidence or UnknownCH.
  TraceResult trace(const Evidence& ev, std::uint64_t now_ms);

  std::optional<Bytes> identity_of(const TxId& txid) const;
  std::optional<TxId> txid_of(ByteView id) const;

 private:
  Rng rng_;
  ledger::Ledger* ledger_;
  ledger::Capability cap_;
  ledger::LedgerView view_;
  ProtocolConfig cfg_;
  SignatureKeyPair sig_;
  EncryptionKeyPair enc_;
  GroupSecret secret_;
  std::vector<GroupSecret> history_;
  SystemParams params_;
  Directory directory_;
  std::map<TxId, Bytes> ids_;
};

enum class RsmFault { None, SwapTxid };

class Rsm : public Actor {
 public:
  Rsm(std::string id, Rng rng, Lea& lea, std::uint64_t sync_delay_ms);

  ledger::LedgerView& view() { return view_; }
  const ledger::LedgerView& view() const { return view_; }
  const PublicKeys& public_keys() const { return pub_; }
  Lea& lea() { return *lea_; }

  wire::GroupKeyMsg attach_rsu(const std::string& rsu_id, const PublicKeys& keys);
  void install_group_key(const wire::GroupKeyMsg& msg);
  std::uint32_t epoch() const { return secret_.epoch; }

  /// Relays C1 to the LEA and gets the receipt back.
  wire::Receipt forward_registration(const wire::RegistrationRequest& req, std::uint64_t now_ms);
  /// Mints PD, pID, D for the VN.
  wire::RegistrationReply complete_registration(const wire::Receipt& receipt, std::uint64_t now_ms);

  TxId revoke(const GroupPoint& ch, std::uint64_t now_ms);

  /// Misbehaviour hook for adversarial scenarios.
  void set_fault(RsmFault f) { fault_ = f; }

 private:
  Rng rng_;
  Lea* lea_;
  ledger::Capability cap_;
  ledger::LedgerView view_;
  SignatureKeyPair sig_;
  EncryptionKeyPair enc_;
  PublicKeys pub_;
  GroupSecret secret_;
  RsmFault fault_ = RsmFault::None;
  std::optional<TxId> last_txid_;
};

/// Established session eligible for a rotation update.
struct EstablishedSession {
  std::uint64_t peer = 0;
  GroupPoint ch;
  std::uint64_t established_ms = 0;
};

class Rsu : public Actor {
 public:
  Rsu(std::string id, Rng rng, Rsm& rsm, ProtocolConfig cfg = {});

  const PublicKeys& public_keys() const { return pub_; }
  Rsm& rsm() { return *rsm_; }
  std::uint32_t epoch() const { return secret_.epoch; }

  /// Verifies a REQ and answers it. `peer` names the VN-side endpoint so the ACK can be matched.
  /// Throws StaleTimestamp, ReplayDetected, UnknownCredential,
  /// RevokedCredential, ExpiredRegistration.
  wire::AuthReply handle_request(std::uint64_t peer, const wire::AuthRequest& req,
                                 std::uint64_t now_ms);
  /// Confirms the session. Throws BadAck (also when no request is pending for `peer`).
  void handle_ack(std::uint64_t peer, const wire::AuthAck& ack, std::uint64_t now_ms);

  std::optional<SymKey> session_key(std::uint64_t peer) const;
  bool confirmed(std::uint64_t peer) const;

  /// σ_RT for the REQ of a session this RSU handled, plus the CH it resolved
  /// to (reported to the RSM for revocation).
  std::pair<Evidence, GroupPoint> report_malicious(std::uint64_t peer) const;
  /// σ_RT over an arbitrary encoded REQ this RSU received.
  Evidence attest(ByteView req) const;

  void install_group_key(const wire::GroupKeyMsg& msg);
  std::vector<EstablishedSession> established() const;
  /// S_upd = SEN_Ks(pID' || D') under the current group secret.
  wire::UpdateMsg mint_update(std::uint64_t peer, std::uint64_t now_ms);
  void clear_established();

  std::size_t replay_cache_size() const { return replay_.size(); }

 private:
  struct Session {
    Bytes req;
    Bytes rep;
    SymKey m;
    SymKey ks;
    GroupPoint ch;
    bool confirmed = false;
    std::uint64_t established_ms = 0;
  };

  using ReplayKey = std::pair<Pid, std::uint32_t>;

  void prune_replay(std::uint64_t now_ms);
  std::pair<Pid, SymKey> mint_pseudonym(const PseudoData* avoid);

  Rng rng_;
  Rsm* rsm_;
  ProtocolConfig cfg_;
  SignatureKeyPair sig_;
  EncryptionKeyPair enc_;
  PublicKeys pub_;
  ByteArray<kCompressedPointBytes> pk_encoded_{};
  GroupSecret secret_;
  std::map<std::uint64_t, Session> sessions_;
  std::set<ReplayKey> replay_;
  std::deque<std::pair<std::uint64_t, ReplayKey>> replay_order_;
};

/// VN-side long-term credential.
struct ChameleonCredential {
  ChameleonTrapdoor sk;
  GroupPoint y;
  GroupPoint ch;
  Signature sigma;
  TxId txid{};
  std::uint64_t t_exp_ms = 0;
  Pid pid{};
  SymKey d;
};

class Vn : public Actor {
 public:
  Vn(std::string id, Bytes real_id, Rng rng, ProtocolConfig cfg = {});

  const Bytes& real_id() const { return real_id_; }

  /// Builds C1 = AEN(ID, CH) under the LEA's key.
  wire::RegistrationRequest begin_registration(const SystemParams& para);
  /// Checks σ and the ledger entry, then stores the credential. Throws BadSignature, NotOnChain, ExpiredWindow.
  void finish_registration(const wire::RegistrationReply& reply, const ledger::Ledger& chain,
                           std::uint64_t now_ms);

  bool registered() const { return cred_.has_value(); }
  const ChameleonCredential& credential() const;

  /// Fills the (α, A) pool off the critical path.
  void precompute(std::size_t n);
  std::size_t pool_size() const { return pool_.size(); }
  std::size_t inline_points() const { return inline_points_; }

  /// Builds a REQ for `rsu_ver`. Throws NoCredential, ExpiredRegistration.
  wire::AuthRequest start_handover(const VerifyingKey& rsu_ver, std::uint64_t now_ms);
  /// Checks the REP and derives Ks. Throws NoSession, StaleTimestamp, BadKeyConfirm; (pID, D) only
  /// change on success.
  wire::AuthAck handle_reply(const wire::AuthReply& rep, std::uint64_t now_ms);

  /// Rotation: replaces (pID, D) with SDE_Ks(S_upd). Throws NoSession when
  /// no session key is established.
  void apply_update(const wire::UpdateMsg& upd, std::uint64_t now_ms);

  std::optional<SymKey> session_key() const { return ks_; }
  bool handover_pending() const { return pending_.has_value(); }

 private:
  struct Pending {
    NonZeroScalar beta;
    Timestamp t1;
    Bytes req;
    SymKey d;  // the D that encrypted S1
  };
  struct PoolEntry {
    NonZeroScalar alpha;
    GroupPoint a;
  };
  struct Enrolment {
    ChameleonKeys keys;
    EncryptionKey lea_enc;
    VerifyingKey lea_ver;
  };

  PoolEntry make_point();

  Bytes real_id_;
  Rng rng_;
  ProtocolConfig cfg_;
  std::optional<Enrolment> enrol_;
  std::optional<ChameleonCredential> cred_;
  std::deque<PoolEntry> pool_;
  std::size_t inline_points_ = 0;
  std::optional<Pending> pending_;
  std::optional<SymKey> ks_;
};

/// ID || CH || T_Exp, the message the LEA signs at registration.
Bytes registration_message(ByteView id, const GroupPoint& ch, std::uint64_t t_exp_ms);

/// Outcome of re-keying the whole system.
struct PendingUpdate {
  std::string rsu_id;
  std::uint64_t peer = 0;
  wire::UpdateMsg msg;
};

struct RotationReport {
  std::uint32_t epoch = 0;
  std::vector<PendingUpdate> updates;
  std::size_t skipped_revoked = 0;
};

/// LEA mints (GK', b'), RSMs and RSUs install it, and each unrevoked CH's
/// most recent established session receives an S_upd.
RotationReport rotate_group_key(Lea& lea, std::span<Rsm* const> rsms,
                                std::span<Rsu* const> rsus, std::uint64_t now_ms);

enum class AuditVerdict { Consistent, Framed };

struct FrameClaim {
  Evidence evidence;
  Bytes claimed_id;
  SymKey d_star;
  TxId txid_h{};
};

/// Third-party check on a trace result using public data only. Throws
/// InvalidEvidence when σ_RT or the ledger signature does not verify.
AuditVerdict audit_frame_claim(const FrameClaim& claim, const Directory& directory,
                               const VerifyingKey& lea_ver, const ledger::Ledger& chain);

std::string_view to_string(AuditVerdict v);

}  // namespace bephap
