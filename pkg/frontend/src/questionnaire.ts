// Five-component trust questionnaire payloads.

export const COMPONENTS = [
  "competence",
  "predictability",
  "reliability",
  "faith",
  "overall",
] as const;

export type Component = (typeof COMPONENTS)[number];

export interface QuestionnairePayload {
  competence: number;
  predictability: number;
  reliability: number;
  faith: number;
  overall: number;
}

export class IncompleteQuestionnaire extends Error {}

/** Build the report payload in canonical component order.
 *  Every slider must be answered and sit in [0, 10]; otherwise submission
 *  is blocked with an IncompleteQuestionnaire error naming the component. */
export function buildReportPayload(values: Partial<Record<Component, number>>): QuestionnairePayload {
  const payload = {} as Record<Component, number>;
  for (const component of COMPONENTS) {
    const value = values[component];
    if (value === undefined || value === null || Number.isNaN(value)) {
      throw new IncompleteQuestionnaire(`unanswered slider: ${component}`);
    }
    if (value < 0 || value > 10) {
      throw new IncompleteQuestionnaire(`${component} must be between 0 and 10`);
    }
    payload[component] = value;
  }
  return payload as QuestionnairePayload;
}

/** Total trust on the questionnaire side: the mean of the five components. */
export function totalTrust(payload: QuestionnairePayload): number {
  let sum = 0;
  for (const component of COMPONENTS) sum += payload[component];
  return sum / COMPONENTS.length;
}
