/**@file
	@brief UMTS AKA simulation: five-component authentication vectors,
	AUTN verification on the USIM, and the replay / fake-base-station
	defenses 3G added over GSM.

	The AV is (RAND, XRES, CK, IK, AUTN) with
	AUTN = (SQN ^ AK)[48] || AMF[16] || MAC[64]. The USIM authenticates
	the *network* by recomputing the MAC, and rejects stale sequence
	numbers, which is exactly what the GSM triplet flow cannot do.
*/

#ifndef GSMSEC_AUTH_UMTS_H
#define GSMSEC_AUTH_UMTS_H

#include <functional>
#include <map>
#include <string>
#include <variant>

#include "gsmsec/kasumi.hpp"
#include "gsmsec/scenario.hpp"

namespace gsmsec::umts {

using Rand128 = std::array<uint8_t, 16>;
using Autn = std::array<uint8_t, 16>;

inline constexpr uint16_t kDefaultAmf = 0x0000;
inline constexpr uint64_t kSqnMask = 0xFFFFFFFFFFFFull;  // 48 bits

/** Pluggable authentication function set. f1 is the network MAC, f2 the
	expected response, f3/f4 the cipher and integrity keys, f5 the
	anonymity key (48 bits). MILENAGE would slot in here; the demo set
	below is the default. */
struct FSetInterface {
	std::function<uint64_t(const kasumi::CipherKey&, const Rand128&, uint64_t sqn, uint16_t amf)> f1;
	std::function<uint64_t(const kasumi::CipherKey&, const Rand128&)> f2;
	std::function<kasumi::CipherKey(const kasumi::CipherKey&, const Rand128&)> f3;
	std::function<kasumi::CipherKey(const kasumi::CipherKey&, const Rand128&)> f4;
	std::function<uint64_t(const kasumi::CipherKey&, const Rand128&)> f5;
};

struct FsetOutput {
	uint64_t mac;
	uint64_t xres;
	kasumi::CipherKey ck;
	kasumi::CipherKey ik;
	uint64_t ak;  // low 48 bits
};

/** Demo function set over the block cipher: with RAND = R1 || R2,
	X_hi = E_k(R1) and X_lo = E_k(R2),
	  mac  = E_k(X_hi ^ (sqn || amf))
	  xres = E_k(X_hi ^ X_lo)
	  ck   = E_k(X_hi ^ C3) || E_k(X_lo ^ C3),  C3 = 0x5555555555555555
	  ik   = E_k(X_hi ^ C4) || E_k(X_lo ^ C4),  C4 = 0xAAAAAAAAAAAAAAAA
	  ak   = most significant 48 bits of E_k(X_lo). */
FsetOutput demo_fset(const kasumi::CipherKey& k, const Rand128& rand, uint64_t sqn, uint16_t amf);
FSetInterface demo_fset_interface();

struct UmtsAuthVector {
	Rand128 rand{};
	uint64_t xres = 0;
	kasumi::CipherKey ck;
	kasumi::CipherKey ik;
	Autn autn{};
};

Autn pack_autn(uint64_t sqn_xor_ak, uint16_t amf, uint64_t mac);
void unpack_autn(const Autn& autn, uint64_t& sqn_xor_ak, uint16_t& amf, uint64_t& mac);

/** USIM side: subscriber key and the highest accepted SQN. Freshness is
	strict greater-than (window size 1). */
struct UsimState {
	kasumi::CipherKey k;
	uint64_t sqn_ms = 0;
};

struct UsimAccept {
	uint64_t res;
	kasumi::CipherKey ck;
	kasumi::CipherKey ik;
};
enum class UsimRejectCause { MacFailure, SyncFailure };
using UsimResult = std::variant<UsimAccept, UsimRejectCause>;

/** Recomputes AK, unmasks SQN and checks the MAC, then freshness.
	Accept updates sqn_ms and returns RES with the session keys. */
UsimResult usim_verify(UsimState& usim, const Rand128& rand, const Autn& autn,
					   const FSetInterface& fset = demo_fset_interface());

/** HLR/AuC with per-subscriber SQN counters. */
class UmtsHlr {
 public:
	explicit UmtsHlr(FSetInterface fset = demo_fset_interface());

	void add_subscriber(const std::string& imsi, const kasumi::CipherKey& k);
	bool knows(const std::string& imsi) const { return subscribers_.count(imsi) != 0; }

	UmtsAuthVector generate_av(const std::string& imsi, sim::SeededRng& rng);

 private:
	struct Subscriber {
		kasumi::CipherKey k;
		uint64_t sqn = 0;
	};
	FSetInterface fset_;
	std::map<std::string, Subscriber> subscribers_;
};

struct UmtsRunResult {
	std::vector<sim::TraceEvent> trace;
	sim::VerdictKind verdict = sim::VerdictKind::Verified;
	// Session keys on both ends after the last authentication.
	std::optional<kasumi::CipherKey> usim_ck, usim_ik;
	std::optional<kasumi::CipherKey> vlr_ck, vlr_ik;
};

UmtsRunResult run_umts_aka(const sim::ScenarioScript& scenario);

}  // namespace gsmsec::umts

#endif
