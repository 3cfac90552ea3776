/**
 * Training-config emission: a fixed table per scenario, rendered as the
 * key/value text blocks the finetuning stacks consume. Output is byte-stable.
 */

export type Scenario = "step1" | "step2-math" | "step2-culture" | "dpo";

export interface TrainConfig {
  scenario: Scenario;
  /** null = full-parameter finetune */
  loraRank: number | null;
  /** kept as the literal notation the config file must carry */
  learningRate: string;
  perDeviceBatch: number;
  gradAccum: number;
  /** null = the scenario block leaves epochs unspecified */
  epochs: number | null;
  bf16: boolean;
}

export class UnknownScenario extends Error {}

const TABLE: Record<Scenario, TrainConfig> = {
  step1: {
    scenario: "step1",
    loraRank: null,
    learningRate: "1.0e-5",
    perDeviceBatch: 1,
    gradAccum: 16,
    epochs: 3.0,
    bf16: true,
  },
  "step2-math": {
    scenario: "step2-math",
    loraRank: 4,
    learningRate: "1.0e-4",
    perDeviceBatch: 1,
    gradAccum: 16,
    epochs: null,
    bf16: true,
  },
  "step2-culture": {
    scenario: "step2-culture",
    loraRank: 16,
    learningRate: "1.0e-4",
    perDeviceBatch: 1,
    gradAccum: 16,
    epochs: null,
    bf16: true,
  },
  // preference-optimization pass reuses the step-2 math LoRA block; no
  // dedicated hyperparameter block exists upstream, flagged in the output
  dpo: {
    scenario: "dpo",
    loraRank: 4,
    learningRate: "1.0e-4",
    perDeviceBatch: 1,
    gradAccum: 16,
    epochs: null,
    bf16: true,
  },
};

export function emitTrainConfig(scenario: string): TrainConfig {
  const config = TABLE[scenario as Scenario];
  if (!config) {
    throw new UnknownScenario(`unknown scenario: ${scenario}`);
  }
  return { ...config };
}

/** Render the config as the documented key/value block (stable order). */
export function renderConfigFile(config: TrainConfig): string {
  const lines: string[] = [];
  const mode = config.loraRank === null ? "full-parameter finetune" : "LoRA finetune";
  lines.push(`# scenario: ${config.scenario} (${mode})`);
  if (config.loraRank !== null) {
    lines.push(`lora_rank: ${config.loraRank} # default lora_alpha: lora_rank * 2`);
    lines.push("lora_target: all");
  }
  lines.push(`per_device_train_batch_size: ${config.perDeviceBatch}`);
  lines.push(`gradient_accumulation_steps: ${config.gradAccum}`);
  lines.push(`learning_rate: ${config.learningRate}`);
  if (config.epochs !== null) {
    lines.push(`num_train_epochs: ${config.epochs.toFixed(1)}`);
  } else {
    lines.push("# num_train_epochs: unset (scenario block does not specify epochs)");
  }
  lines.push(`bf16: ${config.bf16}`);
  if (config.scenario === "dpo") {
    lines.push("# dpo: hyperparameters mirror step2-math; no dedicated block is defined");
  }
  return lines.join("\n") + "\n";
}
