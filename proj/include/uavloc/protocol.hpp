// Simulated subscriber-identity capture exchange between a phone-side state
// machine and the airborne cell, as two FSMs driven to quiescence. Messages
// carry kinds plus minimal payloads; there is no wire encoding.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace uavloc {

enum class MsgKind {
    Sib,              // broadcast: advertised TAC + reselection priority
    TauRequest,
    TauReject,        // cause #10 (implicitly detached) in the capture flow
    AttachRequest,    // carries only the temporary identity (GUTI)
    IdentityRequest,
    IdentityResponse, // discloses the permanent identity (IMSI)
    AttachReject,
};

struct Message {
    MsgKind kind = MsgKind::Sib;
    int tac = 0;
    int priority = 0;
    int cause = 0;
    std::string guti;
    std::string imsi;
};

enum class UeState {
    CampedOnGround,
    Reselecting,
    TauSent,
    Deregistered,
    AttachSent,
    IdentitySent,
    Rejected,
};

enum class CatcherState { Broadcasting, AwaitTau, AwaitAttach, AwaitIdentity, Done };

struct UeFsm {
    UeState state = UeState::CampedOnGround;
    std::string imsi;
    std::string guti;
    int serving_tac = 1;
    int serving_priority = 4;
    // Every state entered, including the transient ones, in chart order.
    std::vector<UeState> history{UeState::CampedOnGround};
};

struct CatcherFsm {
    CatcherState state = CatcherState::Broadcasting;
    int advertised_tac = 999;
    int priority = 7;  // must outrank the serving cell
    std::optional<std::string> captured_imsi;
    bool ue_rangeable = false;  // uplink pilots observable once the flow completes
};

class ProtocolViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Deliver one message; returns the UE's emissions. Out-of-order input throws
// ProtocolViolation and leaves the state untouched. A broadcast that does not
// beat the serving cell (same TAC or lower priority) is ignored silently.
std::vector<Message> ue_step(UeFsm& fsm, const Message& msg);

std::vector<Message> catcher_step(CatcherFsm& fsm, const Message& msg);

// Kick-off broadcast; Broadcasting -> AwaitTau.
Message catcher_broadcast(CatcherFsm& fsm);

struct TranscriptEntry {
    enum class Dir { CatcherToUe, UeToCatcher };
    Dir dir;
    Message msg;
};

// Runs both machines to quiescence and returns the delivered messages in
// order. The canonical flow is exactly 7 messages.
std::vector<TranscriptEntry> run_exchange(UeFsm& ue, CatcherFsm& catcher);

const char* to_string(MsgKind kind);
const char* to_string(UeState state);
const char* to_string(CatcherState state);

// One line per message: "direction kind payload".
std::string format_transcript(const std::vector<TranscriptEntry>& transcript);

}  // namespace uavloc
