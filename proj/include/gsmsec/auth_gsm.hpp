/**@file
	@brief Deterministic simulation of the ten-step GSM challenge-response
	authentication: MS/SIM, serving VLR/MSC and HLR/AuC exchanging
	triplets, with MM-coded air legs.

	The air interface between MS and VLR speaks the mm codec; the
	VLR-HLR core legs are direct calls, traced in clear (which is the
	classic GSM weakness the UMTS simulator contrasts against). Ki never
	leaves the SIM or the AuC, and never appears in any trace.
*/

#ifndef GSMSEC_AUTH_GSM_H
#define GSMSEC_AUTH_GSM_H

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "gsmsec/kasumi.hpp"
#include "gsmsec/scenario.hpp"

namespace gsmsec::gsm {

using Rand128 = std::array<uint8_t, 16>;

/** Pluggable A3 (authentication) and A8 (key generation) pair. The
	operator picks these in a real network; the demo construction below
	is the default. */
struct A3A8Interface {
	std::function<uint32_t(const kasumi::CipherKey& ki, const Rand128& rand)> a3;  // SRES
	std::function<uint64_t(const kasumi::CipherKey& ki, const Rand128& rand)> a8;  // Kc
};

/** Demo A3/A8 built from the block cipher: with RAND = R1 || R2,
	  T = E_ki(R1 ^ R2);  U = E_ki(T ^ R1)
	  SRES = most significant 32 bits of U;  Kc = E_ki(U ^ R2). */
std::pair<uint32_t, uint64_t> demo_a3a8(const kasumi::CipherKey& ki, const Rand128& rand);
A3A8Interface demo_a3a8_interface();

struct SubscriberRecord {
	std::string imsi;  // 15 decimal digits, unique per HLR
	kasumi::CipherKey ki;
	std::optional<uint32_t> tmsi;
	std::string home_hlr = "HLR";
};

struct GsmTriplet {
	Rand128 rand;
	uint32_t sres = 0;
	uint64_t kc = 0;
};

enum class MsPhase { Idle, AwaitingChallenge, Authenticated, Rejected };
enum class VlrPhase { AwaitingTriplet, Challenged, Verified, Failed };

/** Subscriber database plus AuC. Asserts challenge freshness: one RAND
	is never issued twice for the same subscriber within a run. */
class Hlr {
 public:
	explicit Hlr(A3A8Interface algorithms = demo_a3a8_interface());

	void add_subscriber(const SubscriberRecord& record);
	const SubscriberRecord& subscriber(const std::string& imsi) const;  // throws UnknownSubscriber

	GsmTriplet generate_triplet(const std::string& imsi, sim::SeededRng& rng);

 private:
	A3A8Interface algorithms_;
	std::map<std::string, SubscriberRecord> subscribers_;
	std::map<std::string, std::set<Rand128>> issued_rands_;
};

/** Per-subscriber serving-VLR state: phase, cached triplet, agreed Kc
	and the TMSI allocation map. */
class Vlr {
 public:
	struct Entry {
		VlrPhase phase = VlrPhase::AwaitingTriplet;
		std::optional<GsmTriplet> triplet;
		std::optional<uint64_t> kc;  // set on Verified
	};

	Entry& entry(const std::string& imsi) { return entries_[imsi]; }
	const Entry* find(const std::string& imsi) const;

	std::optional<std::string> imsi_for_tmsi(uint32_t tmsi) const;
	void map_tmsi(uint32_t tmsi, const std::string& imsi);
	void unmap_tmsi(uint32_t tmsi);

	/** Allocates a fresh TMSI for a Verified subscriber, invalidating
		the old mapping. Throws StateViolation otherwise. */
	uint32_t reallocate_tmsi(const std::string& imsi, std::optional<uint32_t> old_tmsi,
							 sim::SeededRng& rng);

 private:
	std::map<std::string, Entry> entries_;
	std::map<uint32_t, std::string> tmsi_map_;
};

struct GsmRunResult {
	std::vector<sim::TraceEvent> trace;
	sim::VerdictKind verdict = sim::VerdictKind::Verified;  // of the last authentication
	// Kc agreement of the last authentication, for the acceptance checks.
	std::optional<uint64_t> ms_kc;
	std::optional<uint64_t> vlr_kc;
};

/** Runs a GSM scenario end to end. Protocol failures (SRES mismatch)
	are data, reported in the trace and verdict; unknown subscribers and
	state violations throw. */
GsmRunResult run_gsm_authentication(const sim::ScenarioScript& scenario);

}  // namespace gsmsec::gsm

#endif
