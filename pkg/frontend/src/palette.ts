// Colour integers map to a fixed 12-swatch palette; beyond that only the
// numeric label distinguishes them.

const SWATCHES = [
  "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#46f0f0",
  "#f032e6", "#bcf60c", "#fabebe", "#008080", "#9a6324", "#800000",
];

export function swatch(colour: number): string {
  return SWATCHES[(colour - 1) % SWATCHES.length];
}

export function swatchLabel(colour: number): string {
  return String(colour);
}
