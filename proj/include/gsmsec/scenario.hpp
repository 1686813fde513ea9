/**@file
	@brief Scenario scripts, trace events and the seeded generator the
	protocol simulators share.

	Scenario file format: sectioned key-value text.

	  # GSM authentication, honest run
	  [scenario]
	  protocol = gsm          # or umts
	  seed = 42

	  [subscriber]            # one section per subscriber
	  imsi = 001010123456789
	  ki = 000102030405060708090A0B0C0D0E0F
	  tmsi = 1A2B3C4D         # optional; known to the old VLR
	  old_vlr = off           # optional; orphan the TMSI (default on)

	  [attack]                # optional toggles, all default off
	  tamper_rand = on        # gsm: flip a RAND bit in flight
	  wrong_sres = on         # corrupt the SRES/RES response in flight
	  replay_triplet = on     # gsm: VLR reuses the cached triplet
	  fake_autn = on          # umts: attacker substitutes the AUTN
	  replay_av = on          # umts: VLR replays the same AV

	  [actions]
	  authenticate 001010123456789
	  reallocate_tmsi 001010123456789
	  send_payload 001010123456789 DEADBEEF

	Trace format, one event per line, hex for all octet strings:

	  seq | actor | step | detail

	Every run is a pure function of (script, seed): re-running a scenario
	reproduces the trace byte for byte.
*/

#ifndef GSMSEC_SCENARIO_H
#define GSMSEC_SCENARIO_H

#include <array>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsmsec/bytes.hpp"
#include "gsmsec/kasumi.hpp"

namespace gsmsec::sim {

struct ScenarioParseError : std::runtime_error {
	using std::runtime_error::runtime_error;
};
struct UnknownSubscriber : std::runtime_error {
	using std::runtime_error::runtime_error;
};
struct StateViolation : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/** All scenario nondeterminism flows through one of these. mt19937_64
	has a standard-fixed algorithm, so traces reproduce across builds. */
class SeededRng {
 public:
	explicit SeededRng(uint64_t seed) : engine_(seed) {}

	uint64_t next_u64() { return engine_(); }
	uint32_t next_u32() { return static_cast<uint32_t>(engine_() >> 32); }

	std::array<uint8_t, 16> next_block16() {
		std::array<uint8_t, 16> out{};
		store_be64(out.data(), next_u64());
		store_be64(out.data() + 8, next_u64());
		return out;
	}

 private:
	std::mt19937_64 engine_;
};

struct SubscriberDecl {
	std::string imsi;       // 15 decimal digits
	kasumi::CipherKey key;  // Ki (GSM) or K (UMTS)
	std::optional<uint32_t> tmsi;
	// When off, the old VLR cannot resolve the declared TMSI and the
	// serving VLR falls back to the IDENTITY REQUEST exchange.
	bool old_vlr_knows_tmsi = true;
};

struct AttackToggles {
	bool tamper_rand = false;
	bool wrong_sres = false;
	bool replay_triplet = false;
	bool fake_autn = false;
	bool replay_av = false;
};

struct Action {
	enum class Kind { Authenticate, ReallocateTmsi, SendPayload };
	Kind kind;
	std::string imsi;
	Bytes payload;  // SendPayload only
};

struct ScenarioScript {
	enum class Protocol { Gsm, Umts };
	Protocol protocol = Protocol::Gsm;
	uint64_t seed = 0;
	std::vector<SubscriberDecl> subscribers;
	AttackToggles attack;
	std::vector<Action> actions;
};

ScenarioScript parse_scenario(std::string_view text);
ScenarioScript load_scenario(const std::string& path);  // throws ScenarioParseError

struct TraceEvent {
	unsigned seq;
	std::string actor;
	std::string step;
	std::string detail;
};

std::string format_event(const TraceEvent& event);
std::string format_trace(std::span<const TraceEvent> events);

/** Ordered event collector handing out sequence numbers. */
class Trace {
 public:
	void add(std::string actor, std::string step, std::string detail) {
		events_.push_back({next_seq_++, std::move(actor), std::move(step), std::move(detail)});
	}
	const std::vector<TraceEvent>& events() const { return events_; }

 private:
	std::vector<TraceEvent> events_;
	unsigned next_seq_ = 1;
};

enum class VerdictKind { Verified, Failed, RejectMacFailure, RejectSyncFailure };

std::string verdict_string(VerdictKind verdict);

}  // namespace gsmsec::sim

#endif
