#include <doctest.h>

#include <cmath>

#include "crib/errors.hpp"
#include "crib/grids.hpp"
#include "crib/profile.hpp"
#include "crib/shift_model.hpp"

using namespace crib;

TEST_CASE("normalized gaussian profile peak") {
  DetuningProfile profile = makeProfile(ProfileKind::Gaussian, 1.0, +1);
  CHECK(profile.density(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("uniform profile is a normalized box") {
  DetuningProfile profile = makeProfile(ProfileKind::Uniform, 1.0, +1);
  CHECK(profile.density(0.0) == doctest::Approx(0.5));
  CHECK(profile.density(0.999) == doctest::Approx(0.5));
  CHECK(profile.density(1.001) == 0.0);
}

TEST_CASE("lorentzian profile peak") {
  DetuningProfile profile = makeProfile(ProfileKind::Lorentzian, 2.0, +1);
  CHECK(profile.density(0.0) == doctest::Approx(1.0 / (kPi * 2.0)).epsilon(1e-12));
}

TEST_CASE("flipping a linear gradient negates the slope map") {
  DetuningProfile profile = makeProfile(ProfileKind::LinearGradient, 2.0, +1);
  DetuningProfile flipped = flip(profile);
  Real L = 1.0;
  CHECK(profile.gradientDetuning(0.75, L) == doctest::Approx(0.5));
  CHECK(flipped.gradientDetuning(0.75, L) == doctest::Approx(-0.5));
}

TEST_CASE("flip is an involution with exact field equality") {
  DetuningProfile profile = makeProfile(ProfileKind::Gaussian, 3.0, +1);
  CHECK(flip(flip(profile)) == profile);
  CHECK(flip(profile).sign == -1);
}

TEST_CASE("flipping a removed profile is an error") {
  DetuningProfile profile = makeProfile(ProfileKind::Gaussian, 1.0, +1);
  profile.sign = 0;
  CHECK_THROWS_AS(flip(profile), ConfigError);
}

TEST_CASE("flip mirrors the nodes of the spectral distribution") {
  std::vector<ProfileComponent> comps = {{ProfileKind::Gaussian, 1.0, 2.0, 1.0}};
  DetuningProfile profile = makeProfile(comps, +1);
  DetuningProfile flipped = flip(profile);
  // atom originally detuned by +2 sits at -2 after the flip
  CHECK(flipped.density(-2.0) == doctest::Approx(profile.density(2.0)));
}

TEST_CASE("remove then reestablish") {
  DetuningProfile profile = makeProfile(ProfileKind::Gaussian, 1.5, +1);
  auto result = removeThenReestablish(profile, -1);
  CHECK(result.removed.sign == 0);
  CHECK(result.reestablished == flip(profile));
  auto roundTrip = removeThenReestablish(profile, +1);
  CHECK(roundTrip.reestablished == profile);
  CHECK_THROWS_AS(removeThenReestablish(profile, 0), ConfigError);
}

TEST_CASE("zeeman shift: 13 MHz per mT") {
  CHECK(shiftFromField(zeemanShiftModel(), 1.0) == doctest::Approx(13.0));
}

TEST_CASE("dc Stark shift: 100 kHz per V/cm") {
  CHECK(shiftFromField(dcStarkShiftModel(), 1.0) == doctest::Approx(0.1));
}

TEST_CASE("ac Stark shift: 200 MHz per 1e9 W/m^2 at 10 nm, sign inverts") {
  CHECK(shiftFromField(acStarkShiftModel(10.0), 1.0) == doctest::Approx(200.0));
  CHECK(shiftFromField(acStarkShiftModel(-10.0), 1.0) == doctest::Approx(-200.0));
  // inversely proportional to the laser detuning
  CHECK(shiftFromField(acStarkShiftModel(20.0), 1.0) == doctest::Approx(100.0));
}

TEST_CASE("shift models are linear in the field") {
  for (auto model : {zeemanShiftModel(), dcStarkShiftModel(), acStarkShiftModel()}) {
    Real one = shiftFromField(model, 1.3);
    Real two = shiftFromField(model, 2.6);
    CHECK(two == doctest::Approx(2.0 * one).epsilon(1e-15));
  }
}

TEST_CASE("band mask selects nodes inside the band") {
  DetuningProfile profile = makeProfile(ProfileKind::Gaussian, 1.0, +1);
  SpectrumParams params;
  params.classCount = 32;
  SpectralGrid grid = buildSpectralGrid(profile, params);

  BandMask full = bandMask(grid, -100.0, 100.0);
  CHECK(full.allSelected());
  CHECK(!full.empty);

  BandMask none = bandMask(grid, 50.0, 60.0);
  CHECK(none.empty);
  CHECK(none.count() == 0);

  BandMask half = bandMask(grid, 0.0, 100.0);
  CHECK(half.count() == 16);

  CHECK_THROWS_AS(bandMask(grid, 1.0, 1.0), ConfigError);
}
