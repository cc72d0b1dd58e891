#include "bephap/error.hpp"

namespace bephap {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::WrongLength: return "WrongLength";
    case Errc::OffCurvePoint: return "OffCurvePoint";
    case Errc::NotOnCurve: return "NotOnCurve";
    case Errc::NonCanonicalScalar: return "NonCanonicalScalar";
    case Errc::IntegrityFailure: return "IntegrityFailure";
    case Errc::DuplicateRegistration: return "DuplicateRegistration";
    case Errc::Unauthorized: return "Unauthorized";
    case Errc::UnknownTransaction: return "UnknownTransaction";
    case Errc::MalformedSnapshot: return "MalformedSnapshot";
    case Errc::BadSignature: return "BadSignature";
    case Errc::NotOnChain: return "NotOnChain";
    case Errc::ExpiredWindow: return "ExpiredWindow";
    case Errc::StaleTimestamp: return "StaleTimestamp";
    case Errc::ReplayDetected: return "ReplayDetected";
    case Errc::UnknownCredential: return "UnknownCredential";
    case Errc::RevokedCredential: return "RevokedCredential";
    case Errc::ExpiredRegistration: return "ExpiredRegistration";
    case Errc::BadKeyConfirm: return "BadKeyConfirm";
    case Errc::BadAck: return "BadAck";
    case Errc::NoCredential: return "NoCredential";
    case Errc::NoSession: return "NoSession";
    case Errc::BadEvidence: return "BadEvidence";
    case Errc::UnknownCH: return "UnknownCH";
    case Errc::InvalidEvidence: return "InvalidEvidence";
    case Errc::ScenarioParse: return "ScenarioParse";
    case Errc::ScenarioInvalid: return "ScenarioInvalid";
    case Errc::DeadlockDetected: return "DeadlockDetected";
    case Errc::Usage: return "Usage";
    case Errc::BenchInfeasible: return "BenchInfeasible";
  }
  return "Unknown";
}

}  // namespace bephap
