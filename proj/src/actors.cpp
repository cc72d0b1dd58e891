#include "bephap/actors.hpp"

#include <algorithm>

#include "bephap/error.hpp"

namespace bephap {

namespace {

constexpr std::string_view kS1 = "S1";
constexpr std::string_view kS2 = "S2";
constexpr std::string_view kUpd = "UPD";

std::optional<NonZeroScalar> nonzero_from(ByteView be) {
  auto s = Scalar::try_from_bytes(be);
  if (!s) return std::nullopt;
  return NonZeroScalar::from(*s);
}

/// Fields the RSU and the LEA both recompute from a REQ under one group secret.
struct Opened {
  SymKey d_star;
  GroupPoint ch;
  NonZeroScalar beta;
};

std::optional<Opened> open_request(const wire::AuthRequest& req, const GroupSecret& gs,
                                   ByteView rsu_pk) {
  const PseudoData pd = pid_decrypt(gs.b, req.pid);
  SymKey d = h1(pd, gs.gk, gs.b, req.pid);
  const Bytes beta_bytes = sym_decrypt(d, req.s1, kS1);
  auto beta = nonzero_from(beta_bytes);
  if (!beta) return std::nullopt;
  const NonZeroScalar gamma = h2(req.pid, *beta, req.a, req.s1, d, rsu_pk, req.t1);
  GroupPoint ch = msm2(req.m, gamma, req.a);
  return Opened{std::move(d), std::move(ch), *beta};
}

std::string errc_name(const Error& e) { return std::string(to_string(e.code())); }

}  // namespace

Bytes SystemParams::encode() const {
  Bytes out;
  append_u32(out, static_cast<std::uint32_t>(curve.size()));
  append(out, as_bytes(curve));
  append(out, q);
  append(out, generator);
  append_u32(out, lambda_bits);
  for (HashTag t : hashes) out.push_back(static_cast<std::uint8_t>(t));
  append(out, lea_ver.encode());
  append(out, lea_enc.encode());
  return out;
}

GroupSecret GroupSecret::random(Rng& rng, std::uint32_t epoch) {
  return GroupSecret{NonZeroScalar::random(rng), NonZeroScalar::random(rng), epoch};
}

GroupSecret GroupSecret::from_message(const wire::GroupKeyMsg& msg) {
  auto gk = NonZeroScalar::from(msg.gk);
  auto b = NonZeroScalar::from(msg.b);
  if (!gk || !b) throw Error(Errc::NonCanonicalScalar, "zero group secret");
  return GroupSecret{*gk, *b, msg.epoch};
}

const PublicKeys* Directory::rsm(const std::string& id) const {
  auto it = rsms_.find(id);
  return it == rsms_.end() ? nullptr : &it->second;
}

const PublicKeys* Directory::rsu(const std::string& id) const {
  auto it = rsus_.find(id);
  return it == rsus_.end() ? nullptr : &it->second;
}

std::vector<std::string> Directory::rsu_ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : rsus_) out.push_back(id);
  return out;
}

Bytes registration_message(ByteView id, const GroupPoint& ch, std::uint64_t t_exp_ms) {
  Bytes msg(id.begin(), id.end());
  append(msg, ch.compressed());
  append_u64(msg, t_exp_ms);
  return msg;
}

// ---------------------------------------------------------------- LEA

Lea::Lea(std::string id, Rng rng, ledger::Ledger& ledger, ProtocolConfig cfg)
    : Actor(std::move(id)),
      rng_(std::move(rng)),
      ledger_(&ledger),
      cap_(ledger.grant(ledger::Role::Lea)),
      view_(ledger, this->id(), 0),
      cfg_(cfg),
      sig_(keygen_sig(rng_)),
      enc_(keygen_enc(rng_)),
      secret_(GroupSecret::random(rng_, 0)) {
  const auto& c = curve_params();
  params_.curve = std::string(c.name);
  params_.q = c.q;
  params_.generator = GroupPoint::generator().compressed();
  params_.lambda_bits = c.lambda_bits;
  params_.hashes = {HashTag::H0, HashTag::H1, HashTag::H2, HashTag::H3,
                    HashTag::H4, HashTag::H5, HashTag::H6};
  params_.lea_ver = sig_.pk;
  params_.lea_enc = enc_.pk;
}

wire::GroupKeyMsg Lea::register_rsm(const std::string& rsm_id, const PublicKeys& keys) {
  directory_.add_rsm(rsm_id, keys);
  return secret_.message();
}

wire::Receipt Lea::handle_registration(const wire::RegistrationRequest& req,
                                       std::uint64_t now_ms) {
  try {
    const Bytes plain = adec(enc_.sk, req.c1);
    if (plain.size() < kCompressedPointBytes)
      throw Error(Errc::IntegrityFailure, "short registration body");
    const auto split = plain.end() - static_cast<std::ptrdiff_t>(kCompressedPointBytes);
    const Bytes id(plain.begin(), split);
    GroupPoint ch;
    try {
      ch = GroupPoint::from_compressed(ByteView(&*split, kCompressedPointBytes));
    } catch (const Error&) {
      throw Error(Errc::IntegrityFailure, "registration CH");
    }
    if (ch.is_identity()) throw Error(Errc::IntegrityFailure, "identity CH");

    const std::uint64_t t_exp = now_ms + cfg_.t_exp_ms;
    const Signature sigma = sign(sig_.sk, registration_message(id, ch, t_exp));
    const TxId txid = ledger_->append(cap_, ledger::Registration{sigma, ch, t_exp}, now_ms);
    ids_[txid] = id;
    note(now_ms, "register", "Stored");
    return wire::Receipt{txid, sigma, t_exp};
  } catch (const Error& e) {
    note(now_ms, "register", errc_name(e));
    throw;
  }
}

wire::GroupKeyMsg Lea::rotate(std::uint64_t now_ms) {
  history_.push_back(secret_);
  secret_ = GroupSecret::random(rng_, secret_.epoch + 1);
  note(now_ms, "rotate", "Epoch" + std::to_string(secret_.epoch));
  return secret_.message();
}

TraceResult Lea::trace(const Evidence& ev, std::uint64_t now_ms) {
  try {
    const PublicKeys* rsu = directory_.rsu(ev.rsu_id);
    if (!rsu || !verify(rsu->ver, ev.sigma_rt, ev.req))
      throw Error(Errc::BadEvidence, "sigma_RT");
    wire::AuthRequest req;
    try {
      req = wire::decode_request(ev.req);
    } catch (const Error&) {
      throw Error(Errc::BadEvidence, "REQ encoding");
    }
    const auto pk = rsu->ver.encode();
    view_.sync_all();

    // Newest epoch first; evidence may predate a rotation.
    std::vector<const GroupSecret*> epochs{&secret_};
    for (auto it = history_.rbegin(); it != history_.rend(); ++it) epochs.push_back(&*it);
    for (const GroupSecret* gs : epochs) {
      auto opened = open_request(req, *gs, pk);
      if (!opened) continue;
      auto rec = view_.lookup(opened->ch, now_ms);
      if (!rec) continue;
      auto id = ids_.find(rec->tx.txid);
      if (id == ids_.end()) break;
      note(now_ms, "trace", "Traced");
      return TraceResult{id->second, opened->d_star, opened->ch, rec->tx.txid, ev};
    }
    throw Error(Errc::UnknownCH);
  } catch (const Error& e) {
    note(now_ms, "trace", errc_name(e));
    throw;
  }
}

std::optional<Bytes> Lea::identity_of(const TxId& txid) const {
  auto it = ids_.find(txid);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<TxId> Lea::txid_of(ByteView id) const {
  for (const auto& [txid, stored] : ids_)
    if (std::equal(stored.begin(), stored.end(), id.begin(), id.end())) return txid;
  return std::nullopt;
}

// ---------------------------------------------------------------- RSM

Rsm::Rsm(std::string id, Rng rng, Lea& lea, std::uint64_t sync_delay_ms)
    : Actor(std::move(id)),
      rng_(std::move(rng)),
      lea_(&lea),
      cap_(lea.ledger().grant(ledger::Role::Rsm)),
      view_(lea.ledger(), this->id(), sync_delay_ms),
      sig_(keygen_sig(rng_)),
      enc_(keygen_enc(rng_)),
      pub_{sig_.pk, enc_.pk},
      secret_(GroupSecret::from_message(lea.register_rsm(this->id(), pub_))) {}

wire::GroupKeyMsg Rsm::attach_rsu(const std::string& rsu_id, const PublicKeys& keys) {
  lea_->directory().add_rsu(rsu_id, keys);
  return secret_.message();
}

void Rsm::install_group_key(const wire::GroupKeyMsg& msg) {
  secret_ = GroupSecret::from_message(msg);
}

wire::Receipt Rsm::forward_registration(const wire::RegistrationRequest& req,
                                        std::uint64_t now_ms) {
  return lea_->handle_registration(req, now_ms);
}

wire::RegistrationReply Rsm::complete_registration(const wire::Receipt& receipt,
                                                   std::uint64_t now_ms) {
  const PseudoData pd = rng_.bytes<kPidBytes>();
  const Pid pid = pid_encrypt(secret_.b, pd);
  wire::RegistrationReply reply{receipt, pid, h1(pd, secret_.gk, secret_.b, pid)};
  if (fault_ == RsmFault::SwapTxid && last_txid_) reply.receipt.txid = *last_txid_;
  last_txid_ = receipt.txid;
  note(now_ms, "complete_registration", "Issued");
  return reply;
}

TxId Rsm::revoke(const GroupPoint& ch, std::uint64_t now_ms) {
  const TxId txid = lea_->ledger().append(cap_, ledger::Revocation{ch}, now_ms);
  note(now_ms, "revoke", "Appended");
  return txid;
}

// ---------------------------------------------------------------- RSU

Rsu::Rsu(std::string id, Rng rng, Rsm& rsm, ProtocolConfig cfg)
    : Actor(std::move(id)),
      rng_(std::move(rng)),
      rsm_(&rsm),
      cfg_(cfg),
      sig_(keygen_sig(rng_)),
      enc_(keygen_enc(rng_)),
      pub_{sig_.pk, enc_.pk},
      pk_encoded_(sig_.pk.encode()),
      secret_(GroupSecret::from_message(rsm.attach_rsu(this->id(), pub_))) {}

void Rsu::prune_replay(std::uint64_t now_ms) {
  const std::uint64_t retention = 2ull * cfg_.freshness_ms;
  while (!replay_order_.empty() && replay_order_.front().first + retention < now_ms) {
    replay_.erase(replay_order_.front().second);
    replay_order_.pop_front();
  }
}

std::pair<Pid, SymKey> Rsu::mint_pseudonym(const PseudoData* avoid) {
  PseudoData pd = rng_.bytes<kPidBytes>();
  while (avoid && pd == *avoid) pd = rng_.bytes<kPidBytes>();
  const Pid pid = pid_encrypt(secret_.b, pd);
  return {pid, h1(pd, secret_.gk, secret_.b, pid)};
}

wire::AuthReply Rsu::handle_request(std::uint64_t peer, const wire::AuthRequest& req,
                                    std::uint64_t now_ms) {
  try {
    if (!is_fresh(req.t1, now_ms, cfg_.freshness_ms)) throw Error(Errc::StaleTimestamp, "T1");
    prune_replay(now_ms);
    const ReplayKey rkey{req.pid, req.t1.ms};
    if (replay_.contains(rkey)) throw Error(Errc::ReplayDetected);

    auto opened = open_request(req, secret_, pk_encoded_);
    if (!opened) throw Error(Errc::UnknownCredential, "S1 does not open");
    auto rec = rsm_->view().lookup(opened->ch, now_ms);
    if (!rec) throw Error(Errc::UnknownCredential);
    if (rec->revoked) throw Error(Errc::RevokedCredential);
    if (rec->expired) throw Error(Errc::ExpiredRegistration);

    replay_.insert(rkey);
    replay_order_.emplace_back(now_ms, rkey);

    const PseudoData pd_star = pid_decrypt(secret_.b, req.pid);
    auto [pid_next, d_next] = mint_pseudonym(&pd_star);
    SymKey m = h3(opened->ch, opened->d_star, opened->beta, req.t1);
    const NonZeroScalar beta_rsu = NonZeroScalar::random(rng_);
    const Timestamp t2 = Timestamp::from_ms(now_ms);
    SymKey ks = h4(beta_rsu, m, t2);

    Bytes plain;
    append(plain, beta_rsu.bytes());
    append(plain, pid_next);
    append(plain, d_next.view());
    const Bytes s2 = sym_encrypt(m, plain, kS2);
    secure_wipe(plain);

    wire::AuthReply rep;
    std::copy(s2.begin(), s2.end(), rep.s2.begin());
    rep.s3 = h5(s2, beta_rsu, pid_next, d_next, m, ks, t2);
    rep.t2 = t2;

    sessions_.insert_or_assign(
        peer, Session{wire::encode(req), wire::encode(rep), m, ks, opened->ch, false, 0});
    note(now_ms, "handle_request", "Replied");
    return rep;
  } catch (const Error& e) {
    note(now_ms, "handle_request", errc_name(e));
    throw;
  }
}

void Rsu::handle_ack(std::uint64_t peer, const wire::AuthAck& ack, std::uint64_t now_ms) {
  auto it = sessions_.find(peer);
  if (it == sessions_.end() || it->second.confirmed) {
    note(now_ms, "handle_ack", "BadAck");
    throw Error(Errc::BadAck, "no pending session");
  }
  Session& s = it->second;
  const Digest expected = h6(s.m, s.ks, s.req, s.rep);
  if (!constant_time_equal(expected, ack.ack)) {
    note(now_ms, "handle_ack", "BadAck");
    throw Error(Errc::BadAck);
  }
  s.confirmed = true;
  s.established_ms = now_ms;
  note(now_ms, "handle_ack", "Confirmed");
}

std::optional<SymKey> Rsu::session_key(std::uint64_t peer) const {
  auto it = sessions_.find(peer);
  if (it == sessions_.end()) return std::nullopt;
  return it->second.ks;
}

bool Rsu::confirmed(std::uint64_t peer) const {
  auto it = sessions_.find(peer);
  return it != sessions_.end() && it->second.confirmed;
}

std::pair<Evidence, GroupPoint> Rsu::report_malicious(std::uint64_t peer) const {
  auto it = sessions_.find(peer);
  if (it == sessions_.end()) throw Error(Errc::NoSession, "no session to report");
  return {attest(it->second.req), it->second.ch};
}

Evidence Rsu::attest(ByteView req) const {
  return Evidence{id(), sign(sig_.sk, req), Bytes(req.begin(), req.end())};
}

void Rsu::install_group_key(const wire::GroupKeyMsg& msg) {
  secret_ = GroupSecret::from_message(msg);
}

std::vector<EstablishedSession> Rsu::established() const {
  std::vector<EstablishedSession> out;
  for (const auto& [peer, s] : sessions_)
    if (s.confirmed) out.push_back({peer, s.ch, s.established_ms});
  return out;
}

wire::UpdateMsg Rsu::mint_update(std::uint64_t peer, std::uint64_t now_ms) {
  auto it = sessions_.find(peer);
  if (it == sessions_.end() || !it->second.confirmed)
    throw Error(Errc::NoSession, "no established session");
  auto [pid, d] = mint_pseudonym(nullptr);
  Bytes plain;
  append(plain, pid);
  append(plain, d.view());
  const Bytes ct = sym_encrypt(it->second.ks, plain, kUpd);
  secure_wipe(plain);
  wire::UpdateMsg upd;
  std::copy(ct.begin(), ct.end(), upd.s_upd.begin());
  note(now_ms, "mint_update", "Issued");
  return upd;
}

void Rsu::clear_established() {
  std::erase_if(sessions_, [](const auto& kv) { return kv.second.confirmed; });
}

// ---------------------------------------------------------------- VN

Vn::Vn(std::string id, Bytes real_id, Rng rng, ProtocolConfig cfg)
    : Actor(std::move(id)), real_id_(std::move(real_id)), rng_(std::move(rng)), cfg_(cfg) {}

const ChameleonCredential& Vn::credential() const {
  if (!cred_) throw Error(Errc::NoCredential);
  return *cred_;
}

wire::RegistrationRequest Vn::begin_registration(const SystemParams& para) {
  const NonZeroScalar s = NonZeroScalar::random(rng_);
  const NonZeroScalar r_star = h0(real_id_, s);
  ChameleonKeys keys = ch_keygen(rng_, r_star);
  Bytes plain = real_id_;
  append(plain, keys.key.ch.compressed());
  wire::RegistrationRequest req{aenc(para.lea_enc, plain, rng_)};
  enrol_.emplace(Enrolment{std::move(keys), para.lea_enc, para.lea_ver});
  return req;
}

void Vn::finish_registration(const wire::RegistrationReply& reply, const ledger::Ledger& chain,
                             std::uint64_t now_ms) {
  try {
    if (!enrol_) throw Error(Errc::NoSession, "no registration in progress");
    const auto& keys = enrol_->keys;
    const auto& r = reply.receipt;
    if (!verify(enrol_->lea_ver, r.sigma, registration_message(real_id_, keys.key.ch, r.t_exp_ms)))
      throw Error(Errc::BadSignature);
    if (!chain.verify_inclusion(r.txid, ledger::Registration{r.sigma, keys.key.ch, r.t_exp_ms}))
      throw Error(Errc::NotOnChain);
    if (r.t_exp_ms <= now_ms) throw Error(Errc::ExpiredWindow);

    cred_.emplace(ChameleonCredential{keys.trapdoor, keys.key.y, keys.key.ch, r.sigma, r.txid,
                                      r.t_exp_ms, reply.pid, reply.d});
    enrol_.reset();
    pool_.clear();
    pending_.reset();
    ks_.reset();
    note(now_ms, "finish_registration", "Registered");
  } catch (const Error& e) {
    note(now_ms, "finish_registration", errc_name(e));
    throw;
  }
}

Vn::PoolEntry Vn::make_point() {
  NonZeroScalar alpha = NonZeroScalar::random(rng_);
  GroupPoint a = scalar_mul(cred_->y, alpha);
  // A travels as x only; take the even-y representative by negating α.
  if (!a.has_even_y()) {
    alpha = *NonZeroScalar::from(-alpha.value());
    a = -a;
  }
  return PoolEntry{alpha, std::move(a)};
}

void Vn::precompute(std::size_t n) {
  if (!cred_) throw Error(Errc::NoCredential);
  for (std::size_t i = 0; i < n; ++i) pool_.push_back(make_point());
}

wire::AuthRequest Vn::start_handover(const VerifyingKey& rsu_ver, std::uint64_t now_ms) {
  if (!cred_) throw Error(Errc::NoCredential);
  if (cred_->t_exp_ms <= now_ms) {
    note(now_ms, "start_handover", "ExpiredRegistration");
    throw Error(Errc::ExpiredRegistration);
  }
  PoolEntry point = [&] {
    if (pool_.empty()) {
      ++inline_points_;
      return make_point();
    }
    PoolEntry e = std::move(pool_.front());
    pool_.pop_front();
    return e;
  }();

  const NonZeroScalar beta = NonZeroScalar::random(rng_);
  wire::AuthRequest req;
  req.pid = cred_->pid;
  const Bytes s1 = sym_encrypt(cred_->d, beta.bytes(), kS1);
  std::copy(s1.begin(), s1.end(), req.s1.begin());
  req.t1 = Timestamp::from_ms(now_ms);
  req.a = std::move(point.a);
  const NonZeroScalar gamma = h2(req.pid, beta, req.a, req.s1, cred_->d, rsu_ver.encode(), req.t1);
  const Scalar r = point.alpha.value() * gamma.value();
  req.m = cred_->sk.k - r * cred_->sk.x.value();

  pending_.emplace(Pending{beta, req.t1, wire::encode(req), cred_->d});
  note(now_ms, "start_handover", "Sent");
  return req;
}

wire::AuthAck Vn::handle_reply(const wire::AuthReply& rep, std::uint64_t now_ms) {
  try {
    if (!pending_) throw Error(Errc::NoSession, "no handover pending");
    if (!is_fresh(rep.t2, now_ms, cfg_.freshness_ms)) throw Error(Errc::StaleTimestamp, "T2");
    const Pending& p = *pending_;
    const SymKey m = h3(cred_->ch, p.d, p.beta, p.t1);
    Bytes plain = sym_decrypt(m, rep.s2, kS2);
    const ByteView pv(plain);
    auto beta_rsu = nonzero_from(pv.first(kScalarBytes));
    if (!beta_rsu) {
      secure_wipe(plain);
      throw Error(Errc::BadKeyConfirm, "beta_RSU");
    }
    Pid pid_next{};
    std::copy_n(pv.subspan(kScalarBytes).begin(), kPidBytes, pid_next.begin());
    const SymKey d_next = SymKey::from(pv.subspan(kScalarBytes + kPidBytes, kLambdaBytes));
    secure_wipe(plain);

    const SymKey ks = h4(*beta_rsu, m, rep.t2);
    const Digest s3 = h5(rep.s2, *beta_rsu, pid_next, d_next, m, ks, rep.t2);
    if (!constant_time_equal(s3, rep.s3)) throw Error(Errc::BadKeyConfirm);

    wire::AuthAck ack{h6(m, ks, p.req, wire::encode(rep))};
    cred_->pid = pid_next;
    cred_->d = d_next;
    ks_ = ks;
    pending_.reset();
    note(now_ms, "handle_reply", "Confirmed");
    return ack;
  } catch (const Error& e) {
    note(now_ms, "handle_reply", errc_name(e));
    throw;
  }
}

void Vn::apply_update(const wire::UpdateMsg& upd, std::uint64_t now_ms) {
  if (!cred_ || !ks_) throw Error(Errc::NoSession, "no session key for update");
  Bytes plain = sym_decrypt(*ks_, upd.s_upd, kUpd);
  std::copy_n(plain.begin(), kPidBytes, cred_->pid.begin());
  cred_->d = SymKey::from(ByteView(plain).subspan(kPidBytes));
  secure_wipe(plain);
  note(now_ms, "apply_update", "Applied");
}

// ---------------------------------------------------------------- orchestration

RotationReport rotate_group_key(Lea& lea, std::span<Rsm* const> rsms,
                                std::span<Rsu* const> rsus, std::uint64_t now_ms) {
  const wire::GroupKeyMsg msg = lea.rotate(now_ms);
  for (Rsm* rsm : rsms) {
    rsm->install_group_key(msg);
    rsm->view().sync(now_ms);
  }

  // A VN may hold sessions at several RSUs but only knows its latest Ks.
  struct Pick {
    Rsu* rsu;
    EstablishedSession session;
  };
  std::map<ledger::PointKey, Pick> latest;
  for (Rsu* rsu : rsus) {
    for (auto& s : rsu->established()) {
      const auto key = s.ch.compressed();
      auto it = latest.find(key);
      if (it == latest.end() || s.established_ms > it->second.session.established_ms)
        latest.insert_or_assign(key, Pick{rsu, std::move(s)});
    }
  }
  for (Rsu* rsu : rsus) rsu->install_group_key(msg);

  RotationReport report;
  report.epoch = msg.epoch;
  for (auto& [key, pick] : latest) {
    if (pick.rsu->rsm().view().is_revoked(pick.session.ch)) {
      ++report.skipped_revoked;
      continue;
    }
    report.updates.push_back(
        {pick.rsu->id(), pick.session.peer, pick.rsu->mint_update(pick.session.peer, now_ms)});
  }
  for (Rsu* rsu : rsus) rsu->clear_established();
  return report;
}

// ---------------------------------------------------------------- audit

AuditVerdict audit_frame_claim(const FrameClaim& claim, const Directory& directory,
                               const VerifyingKey& lea_ver, const ledger::Ledger& chain) {
  const PublicKeys* rsu = directory.rsu(claim.evidence.rsu_id);
  if (!rsu || !verify(rsu->ver, claim.evidence.sigma_rt, claim.evidence.req))
    throw Error(Errc::InvalidEvidence, "sigma_RT");
  wire::AuthRequest req;
  try {
    req = wire::decode_request(claim.evidence.req);
  } catch (const Error&) {
    throw Error(Errc::InvalidEvidence, "REQ encoding");
  }

  const auto tx = chain.get(claim.txid_h);
  const auto* reg = tx ? std::get_if<ledger::Registration>(&tx->payload) : nullptr;
  if (!reg) throw Error(Errc::InvalidEvidence, "TXID_h is not a registration");
  if (!verify(lea_ver, reg->sigma, registration_message(claim.claimed_id, reg->ch, reg->t_exp_ms)))
    throw Error(Errc::InvalidEvidence, "ledger signature");

  // CH_m from the disclosed D*. A D* that does not open S1 cannot support
  // the claim either.
  const Bytes beta_bytes = sym_decrypt(claim.d_star, req.s1, kS1);
  const auto beta = nonzero_from(beta_bytes);
  if (!beta) return AuditVerdict::Framed;
  const NonZeroScalar gamma =
      h2(req.pid, *beta, req.a, req.s1, claim.d_star, rsu->ver.encode(), req.t1);
  const GroupPoint ch_m = msm2(req.m, gamma, req.a);
  return ch_m == reg->ch ? AuditVerdict::Consistent : AuditVerdict::Framed;
}

std::string_view to_string(AuditVerdict v) {
  return v == AuditVerdict::Consistent ? "Consistent" : "Framed";
}

}  // namespace bephap
