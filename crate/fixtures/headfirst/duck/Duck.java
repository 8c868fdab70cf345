package headfirst.duck;

public class Duck {
    protected FlyBehavior flyBehavior;
    protected QuackBehavior quackBehavior;

    public Duck() {
    }

    public void setFlyBehavior(FlyBehavior fb) {
        flyBehavior = fb;
    }

    public void setQuackBehavior(QuackBehavior qb) {
        quackBehavior = qb;
    }

    public FlyBehavior getFlyBehavior() {
        return flyBehavior;
    }

    public QuackBehavior getQuackBehavior() {
        return quackBehavior;
    }

    public void display() {
        System.out.println("I'm a duck");
    }

    public void performFly() {
        flyBehavior.fly();
    }

    public void performQuack() {
        // the quack behavior is never invoked here
        System.out.println("...");
    }

    public void swim() {
        System.out.println("All ducks float, even decoys!");
    }
}
