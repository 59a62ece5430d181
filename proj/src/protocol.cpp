#include "uavloc/protocol.hpp"

#include <sstream>

namespace uavloc {

namespace {

[[noreturn]] void violation(const char* who, const char* got, const char* state) {
    throw ProtocolViolation(std::string(who) + ": unexpected " + got + " in state " + state);
}

}  // namespace

std::vector<Message> ue_step(UeFsm& fsm, const Message& msg) {
    switch (msg.kind) {
        case MsgKind::Sib: {
            if (fsm.state != UeState::CampedOnGround)
                violation("ue", to_string(msg.kind), to_string(fsm.state));
            // Reselection triggers only for a better-ranked cell advertising a
            // new tracking area.
            if (msg.tac == fsm.serving_tac || msg.priority <= fsm.serving_priority) return {};
            fsm.history.push_back(UeState::Reselecting);
            fsm.history.push_back(UeState::TauSent);
            fsm.state = UeState::TauSent;
            Message tau;
            tau.kind = MsgKind::TauRequest;
            tau.tac = msg.tac;
            return {tau};
        }
        case MsgKind::TauReject: {
            if (fsm.state != UeState::TauSent)
                violation("ue", to_string(msg.kind), to_string(fsm.state));
            if (msg.cause != 10)
                throw ProtocolViolation("ue: unsupported TAU reject cause " +
                                        std::to_string(msg.cause));
            // Implicitly detached: fall back to a fresh attach carrying only
            // the temporary identity.
            fsm.history.push_back(UeState::Deregistered);
            fsm.history.push_back(UeState::AttachSent);
            fsm.state = UeState::AttachSent;
            Message attach;
            attach.kind = MsgKind::AttachRequest;
            attach.guti = fsm.guti;
            return {attach};
        }
        case MsgKind::IdentityRequest: {
            if (fsm.state != UeState::AttachSent)
                violation("ue", to_string(msg.kind), to_string(fsm.state));
            fsm.history.push_back(UeState::IdentitySent);
            fsm.state = UeState::IdentitySent;
            Message resp;
            resp.kind = MsgKind::IdentityResponse;
            resp.imsi = fsm.imsi;
            return {resp};
        }
        case MsgKind::AttachReject: {
            if (fsm.state != UeState::IdentitySent)
                violation("ue", to_string(msg.kind), to_string(fsm.state));
            fsm.history.push_back(UeState::Rejected);
            fsm.state = UeState::Rejected;
            return {};
        }
        default:
            violation("ue", to_string(msg.kind), to_string(fsm.state));
    }
}

std::vector<Message> catcher_step(CatcherFsm& fsm, const Message& msg) {
    switch (msg.kind) {
        case MsgKind::TauRequest: {
            if (fsm.state != CatcherState::AwaitTau)
                violation("catcher", to_string(msg.kind), to_string(fsm.state));
            fsm.state = CatcherState::AwaitAttach;
            Message rej;
            rej.kind = MsgKind::TauReject;
            rej.cause = 10;
            return {rej};
        }
        case MsgKind::AttachRequest: {
            if (fsm.state != CatcherState::AwaitAttach)
                violation("catcher", to_string(msg.kind), to_string(fsm.state));
            // The temporary identity cannot be resolved without the home
            // network, so ask for the permanent one.
            fsm.state = CatcherState::AwaitIdentity;
            Message idreq;
            idreq.kind = MsgKind::IdentityRequest;
            return {idreq};
        }
        case MsgKind::IdentityResponse: {
            if (fsm.state != CatcherState::AwaitIdentity)
                violation("catcher", to_string(msg.kind), to_string(fsm.state));
            fsm.captured_imsi = msg.imsi;
            fsm.state = CatcherState::Done;
            fsm.ue_rangeable = true;
            Message arej;
            arej.kind = MsgKind::AttachReject;
            return {arej};
        }
        default:
            violation("catcher", to_string(msg.kind), to_string(fsm.state));
    }
}

Message catcher_broadcast(CatcherFsm& fsm) {
    if (fsm.state != CatcherState::Broadcasting)
        throw ProtocolViolation("catcher: broadcast only valid in Broadcasting");
    fsm.state = CatcherState::AwaitTau;
    Message sib;
    sib.tac = fsm.advertised_tac;
    sib.priority = fsm.priority;
    return sib;
}

std::vector<TranscriptEntry> run_exchange(UeFsm& ue, CatcherFsm& catcher) {
    if (catcher.advertised_tac == ue.serving_tac)
        throw ProtocolViolation("exchange: advertised TAC must differ from the serving TAC");

    std::vector<TranscriptEntry> transcript;
    std::vector<Message> to_ue{catcher_broadcast(catcher)};
    std::vector<Message> to_catcher;

    // Alternate deliveries until both sides go quiet. The canonical flow is 7
    // messages; anything past a small cap is a loop and gets rejected.
    constexpr std::size_t kMaxMessages = 16;
    while (!to_ue.empty() || !to_catcher.empty()) {
        if (transcript.size() > kMaxMessages)
            throw ProtocolViolation("exchange: message loop detected");
        std::vector<Message> next_to_ue;
        std::vector<Message> next_to_catcher;
        for (const Message& m : to_ue) {
            transcript.push_back({TranscriptEntry::Dir::CatcherToUe, m});
            for (Message& out : ue_step(ue, m)) next_to_catcher.push_back(std::move(out));
        }
        for (const Message& m : to_catcher) {
            transcript.push_back({TranscriptEntry::Dir::UeToCatcher, m});
            for (Message& out : catcher_step(catcher, m)) next_to_ue.push_back(std::move(out));
        }
        to_ue = std::move(next_to_ue);
        to_catcher = std::move(next_to_catcher);
    }
    return transcript;
}

const char* to_string(MsgKind kind) {
    switch (kind) {
        case MsgKind::Sib: return "SIB";
        case MsgKind::TauRequest: return "TAU_REQUEST";
        case MsgKind::TauReject: return "TAU_REJECT";
        case MsgKind::AttachRequest: return "ATTACH_REQUEST";
        case MsgKind::IdentityRequest: return "IDENTITY_REQUEST";
        case MsgKind::IdentityResponse: return "IDENTITY_RESPONSE";
        case MsgKind::AttachReject: return "ATTACH_REJECT";
    }
    return "?";
}

const char* to_string(UeState state) {
    switch (state) {
        case UeState::CampedOnGround: return "CampedOnGround";
        case UeState::Reselecting: return "Reselecting";
        case UeState::TauSent: return "TauSent";
        case UeState::Deregistered: return "Deregistered";
        case UeState::AttachSent: return "AttachSent";
        case UeState::IdentitySent: return "IdentitySent";
        case UeState::Rejected: return "Rejected";
    }
    return "?";
}

const char* to_string(CatcherState state) {
    switch (state) {
        case CatcherState::Broadcasting: return "Broadcasting";
        case CatcherState::AwaitTau: return "AwaitTau";
        case CatcherState::AwaitAttach: return "AwaitAttach";
        case CatcherState::AwaitIdentity: return "AwaitIdentity";
        case CatcherState::Done: return "Done";
    }
    return "?";
}

std::string format_transcript(const std::vector<TranscriptEntry>& transcript) {
    std::ostringstream os;
    for (const TranscriptEntry& e : transcript) {
        os << (e.dir == TranscriptEntry::Dir::CatcherToUe ? "catcher->ue" : "ue->catcher") << ' '
           << to_string(e.msg.kind);
        switch (e.msg.kind) {
            case MsgKind::Sib: os << " tac=" << e.msg.tac << " priority=" << e.msg.priority; break;
            case MsgKind::TauRequest: os << " tac=" << e.msg.tac; break;
            case MsgKind::TauReject: os << " cause=" << e.msg.cause; break;
            case MsgKind::AttachRequest: os << " guti=" << e.msg.guti; break;
            case MsgKind::IdentityResponse: os << " imsi=" << e.msg.imsi; break;
            default: break;
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace uavloc
