#include "gsmsec/auth_umts.hpp"

#include "gsmsec/mm_codec.hpp"
#include "gsmsec/modes.hpp"

namespace gsmsec::umts {

namespace {

constexpr uint64_t kCkConstant = 0x5555555555555555ull;
constexpr uint64_t kIkConstant = 0xAAAAAAAAAAAAAAAAull;

kasumi::CipherKey key_from_words(uint64_t hi, uint64_t lo) {
	std::array<uint8_t, 16> octets{};
	store_be64(octets.data(), hi);
	store_be64(octets.data() + 8, lo);
	return kasumi::CipherKey{octets};
}

}  // namespace

FsetOutput demo_fset(const kasumi::CipherKey& k, const Rand128& rand, uint64_t sqn, uint16_t amf) {
	const kasumi::RoundKeySet keys = kasumi::derive_round_keys(k);
	auto enc = [&keys](uint64_t v) { return kasumi::encrypt_block(kasumi::Block64{v}, keys).value; };

	const uint64_t x_hi = enc(load_be64(rand.data()));
	const uint64_t x_lo = enc(load_be64(rand.data() + 8));

	FsetOutput out;
	out.mac = enc(x_hi ^ (((sqn & kSqnMask) << 16) | amf));
	out.xres = enc(x_hi ^ x_lo);
	out.ck = key_from_words(enc(x_hi ^ kCkConstant), enc(x_lo ^ kCkConstant));
	out.ik = key_from_words(enc(x_hi ^ kIkConstant), enc(x_lo ^ kIkConstant));
	out.ak = enc(x_lo) >> 16;
	return out;
}

FSetInterface demo_fset_interface() {
	return {
		[](const kasumi::CipherKey& k, const Rand128& rand, uint64_t sqn, uint16_t amf) {
			return demo_fset(k, rand, sqn, amf).mac;
		},
		[](const kasumi::CipherKey& k, const Rand128& rand) { return demo_fset(k, rand, 0, 0).xres; },
		[](const kasumi::CipherKey& k, const Rand128& rand) { return demo_fset(k, rand, 0, 0).ck; },
		[](const kasumi::CipherKey& k, const Rand128& rand) { return demo_fset(k, rand, 0, 0).ik; },
		[](const kasumi::CipherKey& k, const Rand128& rand) { return demo_fset(k, rand, 0, 0).ak; },
	};
}

Autn pack_autn(uint64_t sqn_xor_ak, uint16_t amf, uint64_t mac) {
	Autn autn{};
	// 48-bit field: drop the top two octets of the 64-bit word.
	uint8_t wide[8];
	store_be64(wide, sqn_xor_ak & kSqnMask);
	std::copy(wide + 2, wide + 8, autn.begin());
	store_be16(autn.data() + 6, amf);
	store_be64(autn.data() + 8, mac);
	return autn;
}

void unpack_autn(const Autn& autn, uint64_t& sqn_xor_ak, uint16_t& amf, uint64_t& mac) {
	uint8_t wide[8] = {0, 0, autn[0], autn[1], autn[2], autn[3], autn[4], autn[5]};
	sqn_xor_ak = load_be64(wide);
	amf = load_be16(autn.data() + 6);
	mac = load_be64(autn.data() + 8);
}

UsimResult usim_verify(UsimState& usim, const Rand128& rand, const Autn& autn,
					   const FSetInterface& fset) {
	uint64_t sqn_xor_ak = 0, mac = 0;
	uint16_t amf = 0;
	unpack_autn(autn, sqn_xor_ak, amf, mac);

	const uint64_t ak = fset.f5(usim.k, rand) & kSqnMask;
	const uint64_t sqn = sqn_xor_ak ^ ak;
	const uint64_t expected_mac = fset.f1(usim.k, rand, sqn, amf);

	if (mac != expected_mac) return UsimRejectCause::MacFailure;
	if (sqn <= usim.sqn_ms) return UsimRejectCause::SyncFailure;

	usim.sqn_ms = sqn;
	return UsimAccept{fset.f2(usim.k, rand), fset.f3(usim.k, rand), fset.f4(usim.k, rand)};
}

UmtsHlr::UmtsHlr(FSetInterface fset) : fset_(std::move(fset)) {}

void UmtsHlr::add_subscriber(const std::string& imsi, const kasumi::CipherKey& k) {
	if (subscribers_.count(imsi)) throw sim::StateViolation("duplicate IMSI in HLR: " + imsi);
	subscribers_.emplace(imsi, Subscriber{k, 0});
}

UmtsAuthVector UmtsHlr::generate_av(const std::string& imsi, sim::SeededRng& rng) {
	auto it = subscribers_.find(imsi);
	if (it == subscribers_.end()) throw sim::UnknownSubscriber("unknown IMSI: " + imsi);
	Subscriber& sub = it->second;

	UmtsAuthVector av;
	av.rand = rng.next_block16();
	const uint64_t sqn = ++sub.sqn;

	const uint64_t mac = fset_.f1(sub.k, av.rand, sqn, kDefaultAmf);
	av.xres = fset_.f2(sub.k, av.rand);
	av.ck = fset_.f3(sub.k, av.rand);
	av.ik = fset_.f4(sub.k, av.rand);
	const uint64_t ak = fset_.f5(sub.k, av.rand) & kSqnMask;
	av.autn = pack_autn(sqn ^ ak, kDefaultAmf, mac);
	return av;
}

namespace {

const char* reject_name(UsimRejectCause cause) {
	return cause == UsimRejectCause::MacFailure ? "MacFailure" : "SyncFailure";
}

class UmtsSimulation {
 public:
	explicit UmtsSimulation(const sim::ScenarioScript& scenario)
		: rng_(scenario.seed), attack_(scenario.attack) {
		for (const auto& decl : scenario.subscribers) {
			hlr_.add_subscriber(decl.imsi, decl.key);
			usims_.emplace(decl.imsi, UsimState{decl.key, 0});
		}
	}

	UmtsRunResult run(const sim::ScenarioScript& scenario) {
		UmtsRunResult result;
		for (const auto& action : scenario.actions) {
			switch (action.kind) {
				case sim::Action::Kind::Authenticate: authenticate(action.imsi, result); break;
				case sim::Action::Kind::ReallocateTmsi:
					throw sim::StateViolation("reallocate_tmsi is a GSM action");
				case sim::Action::Kind::SendPayload: send_payload(action.imsi, action.payload); break;
			}
		}
		result.trace = trace_.events();
		return result;
	}

 private:
	struct SessionKeys {
		kasumi::CipherKey ck, ik;
	};

	UsimState& usim(const std::string& imsi) {
		auto it = usims_.find(imsi);
		if (it == usims_.end()) throw sim::UnknownSubscriber("unknown IMSI: " + imsi);
		return it->second;
	}

	void authenticate(const std::string& imsi, UmtsRunResult& result) {
		UsimState& subscriber_usim = usim(imsi);
		result.usim_ck.reset();
		result.usim_ik.reset();
		result.vlr_ck.reset();
		result.vlr_ik.reset();

		// Steps 1-2: fresh AV from the AuC, or a replay of the cached one.
		UmtsAuthVector av;
		if (attack_.replay_av && cached_av_.count(imsi)) {
			av = cached_av_[imsi];
			trace_.add("VLR", "replay_av", "reusing cached AV rand=" + to_hex(av.rand));
		} else {
			trace_.add("VLR", "step1_av_request", "imsi=" + imsi + " -> HLR/AuC");
			av = hlr_.generate_av(imsi, rng_);
			trace_.add("HLR", "step2_av_delivery",
					   "rand=" + to_hex(av.rand) + " xres=" + to_hex64(av.xres) +
						   " ck=" + av.ck.hex() + " ik=" + av.ik.hex() + " autn=" + to_hex(av.autn) +
						   " (core leg, clear)");
			cached_av_[imsi] = av;
		}

		// Step 3: challenge (RAND, AUTN) over the air.
		mm::AuthenticationRequest challenge{0, av.rand, av.autn};
		Bytes pdu = mm::encode(challenge);
		trace_.add("VLR", "step3_challenge",
				   mm::describe({{}, challenge, false}) + " pdu=" + to_hex(pdu));
		if (attack_.fake_autn) {
			pdu[3 + 16 + 2 + 15] ^= 0x01;  // last MAC octet inside the AUTN IE
			trace_.add("ATTACKER", "fake_autn", "forged AUTN, pdu=" + to_hex(pdu));
		}

		auto delivered = mm::decode(pdu);
		auto request = std::get<mm::AuthenticationRequest>(
			std::get<mm::DecodedMessage>(delivered).body);

		// USIM side: authenticate the network before answering.
		UsimResult outcome = usim_verify(subscriber_usim, request.rand, *request.autn);
		if (auto* cause = std::get_if<UsimRejectCause>(&outcome)) {
			trace_.add("USIM", "autn_verify", std::string("Reject(") + reject_name(*cause) + ")");
			trace_.add("VLR", "verdict", std::string("Reject(") + reject_name(*cause) + ")");
			result.verdict = *cause == UsimRejectCause::MacFailure
								 ? sim::VerdictKind::RejectMacFailure
								 : sim::VerdictKind::RejectSyncFailure;
			return;
		}
		auto accept = std::get<UsimAccept>(outcome);
		trace_.add("USIM", "autn_verify", "mac ok, sqn fresh -> Accept res=" + to_hex64(accept.res));

		// RES rides the response: SRES = high word, extension = low word.
		mm::AuthenticationResponse response;
		store_be32(response.sres.data(), static_cast<uint32_t>(accept.res >> 32));
		Bytes ext(4);
		store_be32(ext.data(), static_cast<uint32_t>(accept.res));
		response.extended_res = ext;
		Bytes response_pdu = mm::encode(response, true);
		trace_.add("USIM", "step3_response",
				   mm::describe({{}, response, true}) + " pdu=" + to_hex(response_pdu));
		if (attack_.wrong_sres) {
			response_pdu[2] ^= 0xFF;  // first RES octet
			trace_.add("ATTACKER", "wrong_sres", "corrupted RES, pdu=" + to_hex(response_pdu));
		}

		auto received = std::get<mm::AuthenticationResponse>(
			std::get<mm::DecodedMessage>(mm::decode(response_pdu)).body);
		uint64_t res = (static_cast<uint64_t>(load_be32(received.sres.data())) << 32) |
					   load_be32(received.extended_res->data());

		// Step 4: RES comparison at the VLR/SGSN.
		bool match = res == av.xres;
		trace_.add("VLR", "step4_res_compare",
				   "res=" + to_hex64(res) + " xres=" + to_hex64(av.xres) +
					   (match ? " -> match" : " -> MISMATCH"));
		if (!match) {
			Bytes reject = mm::encode(mm::AuthenticationReject{});
			trace_.add("VLR", "authentication_reject", "pdu=" + to_hex(reject));
			trace_.add("VLR", "verdict", "Failed");
			result.verdict = sim::VerdictKind::Failed;
			return;
		}

		sessions_[imsi] = {av.ck, av.ik};
		usim_sessions_[imsi] = {accept.ck, accept.ik};
		trace_.add("VLR", "verdict", "Verified ck=" + av.ck.hex() + " ik=" + av.ik.hex());
		result.verdict = sim::VerdictKind::Verified;
		result.usim_ck = accept.ck;
		result.usim_ik = accept.ik;
		result.vlr_ck = av.ck;
		result.vlr_ik = av.ik;

		// Step 4 aftermath: IK protects the control plane. The network
		// tags the challenge PDU it sent; the USIM checks the tag.
		Bytes control = mm::encode(challenge);
		uint32_t tag = modes::f9_mac(
			modes::MacRequest::over_bytes(av.ik, f9_count_, 0, 0, control));
		trace_.add("VLR", "f9_control_tag", "count=" + to_hex32(f9_count_) + " mac=" + to_hex32(tag));
		uint32_t usim_tag = modes::f9_mac(
			modes::MacRequest::over_bytes(accept.ik, f9_count_, 0, 0, control));
		trace_.add("USIM", "f9_control_verify",
				   usim_tag == tag ? "mac ok" : "mac MISMATCH");
		++f9_count_;
	}

	void send_payload(const std::string& imsi, const Bytes& payload) {
		usim(imsi);
		auto session = sessions_.find(imsi);
		auto usim_session = usim_sessions_.find(imsi);
		if (session == sessions_.end() || usim_session == usim_sessions_.end())
			throw sim::StateViolation("ciphered payload before Verified for " + imsi);

		// CK protects the user plane: f8 keystream, uplink direction.
		uint32_t count = f8_count_++;
		modes::KeystreamRequest request{usim_session->second.ck, count, 1, 0,
										payload.size() * 8};
		Bytes ciphertext = xor_keystream(payload, modes::f8_keystream(request));
		trace_.add("MS", "f8_user_payload",
				   "count=" + to_hex32(count) + " bearer=01 dir=0 ct=" + to_hex(ciphertext));

		modes::KeystreamRequest network{session->second.ck, count, 1, 0, payload.size() * 8};
		Bytes plaintext = xor_keystream(ciphertext, modes::f8_keystream(network));
		trace_.add("VLR", "f8_user_decrypt", "count=" + to_hex32(count) + " pt=" + to_hex(plaintext));
	}

	sim::SeededRng rng_;
	sim::AttackToggles attack_;
	sim::Trace trace_;
	UmtsHlr hlr_;
	std::map<std::string, UsimState> usims_;
	std::map<std::string, UmtsAuthVector> cached_av_;
	std::map<std::string, SessionKeys> sessions_;       // network side
	std::map<std::string, SessionKeys> usim_sessions_;  // USIM side
	uint32_t f9_count_ = 0;
	uint32_t f8_count_ = 0;
};

}  // namespace

UmtsRunResult run_umts_aka(const sim::ScenarioScript& scenario) {
	UmtsSimulation simulation(scenario);
	return simulation.run(scenario);
}

}  // namespace gsmsec::umts
