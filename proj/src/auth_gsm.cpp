#include "gsmsec/auth_gsm.hpp"

#include <cstdio>

#include "gsmsec/mm_codec.hpp"
#include "gsmsec/modes.hpp"

namespace gsmsec::gsm {

namespace {

// MCC 001, MNC 01, LAC 0x0001 - the demo location area.
constexpr std::array<uint8_t, 5> kDemoLai = {0x00, 0xF1, 0x10, 0x00, 0x01};

std::string hex06(uint32_t v) {
	char buf[8];
	std::snprintf(buf, sizeof buf, "%06X", v & 0x3FFFFF);
	return buf;
}

}  // namespace

std::pair<uint32_t, uint64_t> demo_a3a8(const kasumi::CipherKey& ki, const Rand128& rand) {
	const kasumi::RoundKeySet keys = kasumi::derive_round_keys(ki);
	const uint64_t r1 = load_be64(rand.data());
	const uint64_t r2 = load_be64(rand.data() + 8);
	auto enc = [&keys](uint64_t v) { return kasumi::encrypt_block(kasumi::Block64{v}, keys).value; };

	const uint64_t t = enc(r1 ^ r2);
	const uint64_t u = enc(t ^ r1);
	const uint32_t sres = static_cast<uint32_t>(u >> 32);
	const uint64_t kc = enc(u ^ r2);
	return {sres, kc};
}

A3A8Interface demo_a3a8_interface() {
	return {
		[](const kasumi::CipherKey& ki, const Rand128& rand) { return demo_a3a8(ki, rand).first; },
		[](const kasumi::CipherKey& ki, const Rand128& rand) { return demo_a3a8(ki, rand).second; },
	};
}

Hlr::Hlr(A3A8Interface algorithms) : algorithms_(std::move(algorithms)) {}

void Hlr::add_subscriber(const SubscriberRecord& record) {
	if (subscribers_.count(record.imsi))
		throw sim::StateViolation("duplicate IMSI in HLR: " + record.imsi);
	subscribers_.emplace(record.imsi, record);
}

const SubscriberRecord& Hlr::subscriber(const std::string& imsi) const {
	auto it = subscribers_.find(imsi);
	if (it == subscribers_.end()) throw sim::UnknownSubscriber("unknown IMSI: " + imsi);
	return it->second;
}

GsmTriplet Hlr::generate_triplet(const std::string& imsi, sim::SeededRng& rng) {
	const SubscriberRecord& sub = subscriber(imsi);
	GsmTriplet triplet;
	triplet.rand = rng.next_block16();
	auto& issued = issued_rands_[imsi];
	if (!issued.insert(triplet.rand).second)
		throw std::logic_error("challenge freshness violated for " + imsi);
	triplet.sres = algorithms_.a3(sub.ki, triplet.rand);
	triplet.kc = algorithms_.a8(sub.ki, triplet.rand);
	return triplet;
}

const Vlr::Entry* Vlr::find(const std::string& imsi) const {
	auto it = entries_.find(imsi);
	return it == entries_.end() ? nullptr : &it->second;
}

std::optional<std::string> Vlr::imsi_for_tmsi(uint32_t tmsi) const {
	auto it = tmsi_map_.find(tmsi);
	if (it == tmsi_map_.end()) return std::nullopt;
	return it->second;
}

void Vlr::map_tmsi(uint32_t tmsi, const std::string& imsi) { tmsi_map_[tmsi] = imsi; }

void Vlr::unmap_tmsi(uint32_t tmsi) { tmsi_map_.erase(tmsi); }

uint32_t Vlr::reallocate_tmsi(const std::string& imsi, std::optional<uint32_t> old_tmsi,
							  sim::SeededRng& rng) {
	auto it = entries_.find(imsi);
	if (it == entries_.end() || it->second.phase != VlrPhase::Verified)
		throw sim::StateViolation("TMSI reallocation before Verified for " + imsi);
	uint32_t fresh = rng.next_u32();
	while (tmsi_map_.count(fresh) || (old_tmsi && fresh == *old_tmsi)) fresh = rng.next_u32();
	if (old_tmsi) unmap_tmsi(*old_tmsi);
	map_tmsi(fresh, imsi);
	return fresh;
}

namespace {

struct MobileStation {
	std::string imsi;
	kasumi::CipherKey ki;
	std::optional<uint32_t> tmsi;
	MsPhase phase = MsPhase::Idle;
	std::optional<uint64_t> kc;
	bool nsd = false;

	bool next_nsd() {
		bool bit = nsd;
		nsd = !nsd;
		return bit;
	}
};

class GsmSimulation {
 public:
	explicit GsmSimulation(const sim::ScenarioScript& scenario)
		: rng_(scenario.seed), attack_(scenario.attack) {
		for (const auto& decl : scenario.subscribers) {
			hlr_.add_subscriber({decl.imsi, decl.key, decl.tmsi});
			MobileStation ms;
			ms.imsi = decl.imsi;
			ms.ki = decl.key;
			ms.tmsi = decl.tmsi;
			stations_.emplace(decl.imsi, std::move(ms));
			if (decl.tmsi && decl.old_vlr_knows_tmsi) old_vlr_directory_[*decl.tmsi] = decl.imsi;
		}
	}

	GsmRunResult run(const sim::ScenarioScript& scenario) {
		GsmRunResult result;
		for (const auto& action : scenario.actions) {
			switch (action.kind) {
				case sim::Action::Kind::Authenticate: authenticate(action.imsi, result); break;
				case sim::Action::Kind::ReallocateTmsi: reallocate(action.imsi); break;
				case sim::Action::Kind::SendPayload: send_payload(action.imsi, action.payload); break;
			}
		}
		result.trace = trace_.events();
		return result;
	}

 private:
	MobileStation& station(const std::string& imsi) {
		auto it = stations_.find(imsi);
		if (it == stations_.end()) throw sim::UnknownSubscriber("unknown IMSI: " + imsi);
		return it->second;
	}

	// Encodes, traces and delivers one MS->VLR or VLR->MS message.
	Bytes air(const char* from, const std::string& step, const mm::SecurityMessage& msg,
			  std::optional<bool> n_sd = std::nullopt) {
		Bytes pdu = mm::encode(msg, n_sd);
		auto decoded = mm::decode(pdu);
		trace_.add(from, step,
				   mm::describe(std::get<mm::DecodedMessage>(decoded)) + " pdu=" + to_hex(pdu));
		return pdu;
	}

	mm::DecodedMessage deliver(const Bytes& pdu) {
		auto decoded = mm::decode(pdu);
		if (auto* failure = std::get_if<mm::DecodeFailure>(&decoded))
			throw sim::StateViolation(std::string("undecodable air PDU: ") +
									  std::string(mm::decode_error_name(failure->kind)));
		return std::get<mm::DecodedMessage>(decoded);
	}

	// Asks for the real identity over the air; the one leg where the
	// IMSI legitimately crosses the radio path.
	std::string identity_exchange(MobileStation& ms, const char* step) {
		Bytes request = air("VLR", std::string(step) + "_identity_request", mm::IdentityRequest{1});
		deliver(request);
		Bytes response = air("MS", std::string(step) + "_identity_response",
							 mm::IdentityResponse{mm::mobile_identity_from_imsi(ms.imsi)},
							 ms.next_nsd());
		return mm::classify_mobile_identity(
				   std::get<mm::IdentityResponse>(deliver(response).body).mobile_identity)
			.imsi;
	}

	// Steps 1-4: identity presentation and TMSI resolution.
	std::string identify(MobileStation& ms) {
		if (!ms.tmsi) {
			// First attach: no TMSI assigned yet, so the network must ask
			// for the real identity.
			trace_.add("MS", "step2_first_attach", "no TMSI assigned, attach by real identity");
			return identity_exchange(ms, "step2");
		}
		Bytes pdu = air("MS", "step1_attach_tmsi",
						mm::IdentityResponse{mm::mobile_identity_from_tmsi(*ms.tmsi)},
						ms.next_nsd());
		auto attach = deliver(pdu);
		uint32_t tmsi =
			mm::classify_mobile_identity(std::get<mm::IdentityResponse>(attach.body).mobile_identity)
				.tmsi;
		if (auto local = vlr_.imsi_for_tmsi(tmsi)) {
			trace_.add("VLR", "step4_resolve_tmsi", "tmsi=" + to_hex32(tmsi) + " known locally");
			return *local;
		}
		if (auto it = old_vlr_directory_.find(tmsi); it != old_vlr_directory_.end()) {
			trace_.add("VLR", "step4_resolve_old_vlr",
					   "tmsi=" + to_hex32(tmsi) + " resolved by old VLR");
			return it->second;
		}
		// Missing mapping anywhere: fall back to the identity sub-exchange.
		return identity_exchange(ms, "step4");
	}

	void authenticate(const std::string& action_imsi, GsmRunResult& result) {
		MobileStation& ms = station(action_imsi);
		ms.phase = MsPhase::AwaitingChallenge;
		std::string imsi = identify(ms);
		hlr_.subscriber(imsi);  // unknown subscribers abort the scenario

		Vlr::Entry& entry = vlr_.entry(imsi);
		entry.phase = VlrPhase::AwaitingTriplet;

		// Steps 5-6: triplet from the AuC (or a replay from the cache).
		GsmTriplet triplet;
		if (attack_.replay_triplet && entry.triplet) {
			triplet = *entry.triplet;
			trace_.add("VLR", "step6_replay_triplet",
					   "reusing cached triplet rand=" + to_hex(triplet.rand));
		} else {
			trace_.add("VLR", "step5_send_auth_info", "imsi=" + imsi + " -> HLR");
			triplet = hlr_.generate_triplet(imsi, rng_);
			trace_.add("HLR", "step6_triplet_to_vlr",
					   "rand=" + to_hex(triplet.rand) + " sres=" + to_hex32(triplet.sres) +
						   " kc=" + to_hex64(triplet.kc) + " (core leg, clear)");
			entry.triplet = triplet;
		}

		// Step 7: RAND challenge over the air.
		Bytes challenge =
			air("VLR", "step7_challenge", mm::AuthenticationRequest{0, triplet.rand, std::nullopt});
		entry.phase = VlrPhase::Challenged;
		if (attack_.tamper_rand) {
			challenge[3] ^= 0x80;  // first RAND octet
			trace_.add("ATTACKER", "tamper_rand", "flipped RAND bit, pdu=" + to_hex(challenge));
		}

		// Steps 8-9: the SIM computes SRES and Kc from the received RAND.
		auto request = std::get<mm::AuthenticationRequest>(deliver(challenge).body);
		auto [sres_ms, kc_ms] = demo_a3a8(ms.ki, request.rand);
		trace_.add("MS", "step8_compute_a3a8", "sres=" + to_hex32(sres_ms));
		ms.kc = kc_ms;
		trace_.add("MS", "step9_store_kc", "kc=" + to_hex64(kc_ms) + " retained for ciphering");

		mm::AuthenticationResponse response;
		store_be32(response.sres.data(), sres_ms);
		Bytes response_pdu = air("MS", "step9_response", response, ms.next_nsd());
		ms.phase = MsPhase::Authenticated;
		if (attack_.wrong_sres) {
			response_pdu[2] ^= 0xFF;  // first SRES octet
			trace_.add("ATTACKER", "wrong_sres", "corrupted SRES, pdu=" + to_hex(response_pdu));
		}

		// Step 10: the VLR compares the responses.
		auto received = std::get<mm::AuthenticationResponse>(deliver(response_pdu).body);
		uint32_t sres_rx = load_be32(received.sres.data());
		bool match = sres_rx == triplet.sres;
		trace_.add("VLR", "step10_compare_sres",
				   "sres_ms=" + to_hex32(sres_rx) + " sres_hlr=" + to_hex32(triplet.sres) +
					   (match ? " -> match" : " -> MISMATCH"));
		if (match) {
			entry.phase = VlrPhase::Verified;
			entry.kc = triplet.kc;
			if (ms.tmsi) vlr_.map_tmsi(*ms.tmsi, imsi);
			trace_.add("VLR", "verdict", "Verified kc=" + to_hex64(*entry.kc));
			result.verdict = sim::VerdictKind::Verified;
		} else {
			entry.phase = VlrPhase::Failed;
			entry.kc.reset();
			Bytes reject = air("VLR", "authentication_reject", mm::AuthenticationReject{});
			deliver(reject);
			ms.phase = MsPhase::Rejected;
			trace_.add("VLR", "verdict", "AuthenticationFailed");
			result.verdict = sim::VerdictKind::Failed;
		}
		result.ms_kc = ms.kc;
		result.vlr_kc = entry.kc;
	}

	void reallocate(const std::string& imsi) {
		MobileStation& ms = station(imsi);
		uint32_t fresh = vlr_.reallocate_tmsi(imsi, ms.tmsi, rng_);
		Bytes command = air("VLR", "tmsi_realloc_command",
							mm::TmsiReallocationCommand{
								kDemoLai, mm::mobile_identity_from_tmsi(fresh)});
		auto decoded = std::get<mm::TmsiReallocationCommand>(deliver(command).body);
		ms.tmsi = mm::classify_mobile_identity(decoded.mobile_identity).tmsi;
		Bytes complete =
			air("MS", "tmsi_realloc_complete", mm::TmsiReallocationComplete{}, ms.next_nsd());
		deliver(complete);
	}

	void send_payload(const std::string& imsi, const Bytes& payload) {
		MobileStation& ms = station(imsi);
		const Vlr::Entry* entry = vlr_.find(imsi);
		if (!ms.kc || !entry || entry->phase != VlrPhase::Verified || !entry->kc)
			throw sim::StateViolation("ciphered payload before Verified for " + imsi);
		if (payload.size() > 14)
			throw sim::StateViolation("payload exceeds one 114-bit A5/3 frame");

		// Uplink user data rides BLOCK2 of the A5/3 frame keystream.
		uint32_t frame = frame_counter_++;
		auto uplink = modes::a53_keystream(*ms.kc, frame).block2;
		Bytes ciphertext = xor_keystream(payload, uplink);
		trace_.add("MS", "a53_uplink", "frame=" + hex06(frame) + " ct=" + to_hex(ciphertext));

		auto vlr_uplink = modes::a53_keystream(*entry->kc, frame).block2;
		Bytes plaintext = xor_keystream(ciphertext, vlr_uplink);
		trace_.add("VLR", "a53_uplink_decrypt", "frame=" + hex06(frame) + " pt=" + to_hex(plaintext));
	}

	sim::SeededRng rng_;
	sim::AttackToggles attack_;
	sim::Trace trace_;
	Hlr hlr_;
	Vlr vlr_;
	std::map<std::string, MobileStation> stations_;
	std::map<uint32_t, std::string> old_vlr_directory_;
	uint32_t frame_counter_ = 0;
};

}  // namespace

GsmRunResult run_gsm_authentication(const sim::ScenarioScript& scenario) {
	GsmSimulation simulation(scenario);
	return simulation.run(scenario);
}

}  // namespace gsmsec::gsm
