#!/usr/bin/env python3
"""
Waveform Generator
Genereert golvende borduurcurves (spaken en ringen) en bemonstert ze
op booglengte met een vaste steekafstand
"""

import logging
import math

import numpy as np

logger = logging.getLogger(__name__)


class WaveformGenerator:
    """Generator voor golfprofielen langs een curve"""

    # Aantal hulpsamples per mm voor de booglengte-integratie
    SAMPLES_PER_MM = 20
    MIN_SAMPLES = 64

    def __init__(self, amplitude=1.5, period=10.0):
        """
        Initialiseer waveform generator

        Args:
            amplitude: Amplitude van de golf in mm (0 = rechte lijn)
            period: Golflengte in mm langs de curve
        """
        self.amplitude = float(amplitude)
        self.period = float(period)

    @property
    def is_flat(self):
        return self.amplitude == 0.0

    def generate(self, positions, period=None):
        """
        Bereken de zijdelingse uitwijking voor posities langs de curve

        Args:
            positions: Array met posities in mm
            period: Optionele afwijkende golflengte in mm

        Returns:
            Array met uitwijkingen in mm
        """
        positions = np.asarray(positions, dtype=float)
        if self.is_flat:
            return np.zeros_like(positions)

        phase = positions / (period or self.period)
        return self._sine_wave(phase)

    def _sine_wave(self, phase):
        """
        Genereer sinus golf

        Args:
            phase: Fase in cycli (1.0 = een volle golf)

        Returns:
            Uitwijking tussen -amplitude en +amplitude
        """
        return self.amplitude * np.sin(2.0 * np.pi * phase)

    def generate_ramp(self, positions, end, width):
        """
        Lineaire envelop: 0 bij `end`, 1 vanaf `width` mm ervoor

        Wordt gebruikt om de golf naar de rand toe af te bouwen zodat
        de curve binnen het gebied blijft.

        Args:
            positions: Posities in mm
            end: Einde van het bereik in mm
            width: Lengte van de afbouwzone in mm

        Returns:
            Factor tussen 0 en 1 per positie
        """
        positions = np.asarray(positions, dtype=float)
        if width <= 0:
            return np.ones_like(positions)
        remaining = np.clip(end - positions, 0.0, None)
        return np.minimum(1.0, remaining / width)

    def dense_positions(self, length):
        """Fijne bemonstering van [0, length] voor booglengte berekening"""
        count = max(self.MIN_SAMPLES, int(math.ceil(length * self.SAMPLES_PER_MM)) + 1)
        if self.is_flat:
            count = 2
        return np.linspace(0.0, length, count)


def arc_abscissae(length, spacing, tolerance=1e-6):
    """
    Steekposities langs een lijn van gegeven lengte

    Veelvouden van de steekafstand plus het geforceerde eindpunt, zodat
    begin en eind van elke rij altijd vastliggen.

    Args:
        length: Lengte van de lijn in mm
        spacing: Steekafstand in mm
        tolerance: Marge in mm waarbinnen het eindpunt al een veelvoud is

    Returns:
        Array met posities 0, S, 2S, ..., length
    """
    if length <= tolerance:
        return np.array([0.0])
    count = int(math.floor((length + tolerance) / spacing))
    positions = np.arange(count + 1, dtype=float) * spacing
    if length - positions[-1] > tolerance:
        positions = np.append(positions, length)
    else:
        positions[-1] = length
    return positions


def sample_by_arc_length(curve, parameters, spacing):
    """
    Bemonster een parametrische curve op booglengte

    De curve wordt op de fijne parameterreeks als polyline benaderd en de
    steekpunten liggen op die polyline. Het pad tussen twee opeenvolgende
    steken is dan precies de steekafstand, dus geen koorde is langer.

    Args:
        curve: Functie die een parameter-array omzet naar punten (n, 2)
        parameters: Fijne, oplopende parameterreeks (eerste = begin, laatste = eind)
        spacing: Steekafstand in mm langs de boog

    Returns:
        Array (m, 2) met steekpunten, begin- en eindpunt inbegrepen
    """
    parameters = np.asarray(parameters, dtype=float)
    dense = curve(parameters)
    if len(parameters) < 2:
        return dense

    steps = np.hypot(*np.diff(dense, axis=0).T)
    cumulative = np.concatenate(([0.0], np.cumsum(steps)))
    targets = arc_abscissae(cumulative[-1], spacing)
    return np.column_stack((np.interp(targets, cumulative, dense[:, 0]),
                            np.interp(targets, cumulative, dense[:, 1])))


# Test functie
if __name__ == "__main__":
    print("Waveform Generator Test")
    print("=" * 50)

    generator = WaveformGenerator(amplitude=1.5, period=10.0)
    positions = np.linspace(0.0, 20.0, 9)
    for s, offset in zip(positions, generator.generate(positions)):
        print(f"  s={s:5.2f}mm  offset={offset:+6.3f}mm")

    print("\nAbscissen voor 100 mm bij S=15:")
    print("  " + ", ".join(f"{v:g}" for v in arc_abscissae(100.0, 15.0)))

    print("\n✓ Test voltooid")
