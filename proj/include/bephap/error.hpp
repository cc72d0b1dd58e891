#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bephap {

/// Every typed failure the library reports. Protocol rejections, decode
/// failures and harness errors share one enum so that callers (tests, the
/// CLI's exit-code mapping, the event log) can switch on a single code.
enum class Errc {
  // wire
  WrongLength,
  OffCurvePoint,
  NotOnCurve,
  NonCanonicalScalar,
  // crypto
  IntegrityFailure,
  // ledger
  DuplicateRegistration,
  Unauthorized,
  UnknownTransaction,
  MalformedSnapshot,
  // registration
  BadSignature,
  NotOnChain,
  ExpiredWindow,
  // handover
  StaleTimestamp,
  ReplayDetected,
  UnknownCredential,
  RevokedCredential,
  ExpiredRegistration,
  BadKeyConfirm,
  BadAck,
  NoCredential,
  NoSession,
  // trace / audit
  BadEvidence,
  UnknownCH,
  InvalidEvidence,
  // simnet
  ScenarioParse,
  ScenarioInvalid,
  DeadlockDetected,
  // cli
  Usage,
  BenchInfeasible,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  explicit Error(Errc code) : Error(code, {}) {}
  Error(Errc code, const std::string& detail)
      : std::runtime_error(detail.empty()
                               ? std::string(to_string(code))
                               : std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace bephap
